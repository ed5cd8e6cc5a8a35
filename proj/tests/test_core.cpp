#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mixlab/core/error.hpp"
#include "mixlab/core/numeric.hpp"
#include "mixlab/core/random.hpp"
#include "mixlab/core/rational.hpp"

using namespace mixlab;

TEST(Random, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.uniform(), b.uniform());
  Rng c(43);
  EXPECT_NE(Rng(42).next_u64(), c.next_u64());
}

TEST(Random, UniformStaysInsideOpenInterval) {
  Rng r(7);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(Random, NormalMoments) {
  Rng r(11);
  double s1 = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s1 += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Random, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}

TEST(PairwiseSum, MatchesExactIntegerSum) {
  std::vector<double> xs(1001);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
  EXPECT_EQ(pairwise_sum(xs), 1000.0 * 1001.0 / 2.0);
  EXPECT_EQ(pairwise_sum(std::span<const double>()), 0.0);
}

TEST(LogSumExp, HandlesLargeArguments) {
  std::vector<double> z{1000.0, 1000.0};
  EXPECT_NEAR(log_sum_exp(z), 1000.0 + std::log(2.0), 1e-12);
}

TEST(Bisection, FindsThreshold) {
  const double x = bisect_first_true(0.0, 10.0, [](double t) { return t * t >= 2.0; });
  EXPECT_NEAR(x, std::sqrt(2.0), 1e-10);
}

TEST(LogQuadrature, PowerLaw) {
  // integral of u^-0.5 on [1e-6, 1] = 2 (1 - 1e-3)
  const double v = integrate_log([](double u) { return std::pow(u, -0.5); }, 1e-6, 1.0);
  EXPECT_NEAR(v, 2.0 * (1.0 - 1e-3), 1e-6 * 2.0);
  EXPECT_THROW(integrate_log([](double) { return 1.0; }, 0.0, 1.0), InvalidArgument);
}

TEST(LogGrid, EndpointsAndDensity) {
  const auto g = log_grid(1e-3, 1.0, 64);
  EXPECT_EQ(g.size(), 3u * 64u + 1u);
  EXPECT_EQ(g.front(), 1e-3);
  EXPECT_EQ(g.back(), 1.0);
}

TEST(Rational, ArithmeticAndOrdering) {
  const Rational a(1, 2), b(1, 3);
  EXPECT_EQ(a + b, Rational(5, 6));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 6));
  EXPECT_EQ(a / b, Rational(3, 2));
  EXPECT_TRUE(b < a);
  EXPECT_EQ(Rational(2, -4), Rational(-1, 2));
  EXPECT_EQ(Rational(6, 4).str(), "3/2");
  EXPECT_THROW(a / Rational(0), InvalidArgument);
}

TEST(Errors, MessageCarriesModule) {
  try {
    throw NumericalError("rate_theory", "no root");
  } catch (const Error& e) {
    EXPECT_EQ(std::string(e.what()), "rate_theory: no root");
    EXPECT_EQ(e.module(), "rate_theory");
  }
}
