#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mixlab/core/random.hpp"
#include "mixlab/mixing/binning.hpp"
#include "mixlab/mixing/dgp.hpp"
#include "mixlab/mixing/generators.hpp"
#include "mixlab/mixing/markov.hpp"
#include "mixlab/mixing/profile.hpp"

using namespace mixlab;
using namespace mixlab::mixing;

namespace {

double autocorrelation(const std::vector<double>& x, std::size_t lag) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    den += (x[t] - mean) * (x[t] - mean);
    if (t + lag < x.size()) num += (x[t] - mean) * (x[t + lag] - mean);
  }
  return num / den;
}

Matrix two_state(double stay) {
  Matrix p(2, 2);
  p << stay, 1 - stay, 1 - stay, stay;
  return p;
}

Matrix random_chain(Rng& rng, int m, bool lazy) {
  Matrix p(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) p(i, j) = rng.uniform() + 0.05;
    if (lazy) p(i, i) += 1.0;
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

// (1/2) sum_{x,y} |pi(x) P^q(x,y) - pi(x) pi(y)| by explicit enumeration.
double brute_force_pair_tv(const Matrix& p, const Vector& pi, int q) {
  Matrix pq = Matrix::Identity(p.rows(), p.cols());
  for (int i = 0; i < q; ++i) pq = pq * p;
  double s = 0.0;
  for (int x = 0; x < p.rows(); ++x)
    for (int y = 0; y < p.cols(); ++y) s += std::abs(pi(x) * pq(x, y) - pi(x) * pi(y));
  return 0.5 * s;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (std::log(xs[i]) - mx) * (std::log(ys[i]) - my);
    sxx += (std::log(xs[i]) - mx) * (std::log(xs[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace

TEST(FiniteMarkov, IdentityChainIsConstant) {
  const Matrix p = Matrix::Identity(2, 2);
  const auto s = gen_finite_markov(p, {0.0, 1.0}, 5, 3);
  ASSERT_EQ(s.size(), 5u);
  for (double v : s.values) EXPECT_EQ(v, s.values[0]);
}

TEST(FiniteMarkov, EqualRowsGiveIndependence) {
  Matrix p(3, 3);
  p << 0.2, 0.3, 0.5, 0.2, 0.3, 0.5, 0.2, 0.3, 0.5;
  const Vector pi = stationary_distribution(p);
  EXPECT_NEAR(pi(2), 0.5, 1e-12);
  for (int q = 1; q <= 5; ++q) EXPECT_NEAR(exact_beta_markov(p, pi, q), 0.0, 1e-15);
}

TEST(FiniteMarkov, LagOneAutocorrelationMatchesEigenvalue) {
  const auto s = gen_finite_markov(two_state(0.9), {0.0, 1.0}, 100000, 2024);
  EXPECT_NEAR(autocorrelation(s.values, 1), 0.8, 0.01);
  ASSERT_TRUE(s.mixing_oracle.has_value());
  EXPECT_EQ(s.mixing_oracle->kind_name(), "exact_markov");
}

TEST(FiniteMarkov, RejectsBadMatrices) {
  Matrix bad(2, 2);
  bad << 0.5, 0.6, 0.5, 0.5;
  EXPECT_THROW(gen_finite_markov(bad, {0, 1}, 10, 1), InvalidArgument);
  Matrix periodic(2, 2);
  periodic << 0, 1, 1, 0;
  EXPECT_THROW(gen_finite_markov(periodic, {0, 1}, 10, 1), NumericalError);
  EXPECT_THROW(gen_finite_markov(two_state(0.9), {0, 1}, 0, 1), InvalidArgument);
}

TEST(FiniteMarkov, SameSeedIsBitIdentical) {
  const auto a = gen_finite_markov(two_state(0.7), {0.0, 1.0}, 1000, 9);
  const auto b = gen_finite_markov(two_state(0.7), {0.0, 1.0}, 1000, 9);
  EXPECT_EQ(a.values, b.values);
}

TEST(ExactBeta, LagZeroIsOne) {
  const Matrix p = two_state(0.9);
  EXPECT_EQ(exact_beta_markov(p, stationary_distribution(p), 0), 1.0);
  EXPECT_THROW(exact_beta_markov(p, stationary_distribution(p), -1), InvalidArgument);
}

TEST(ExactBeta, TwoStateAgainstEnumeration) {
  const Matrix p = two_state(0.9);
  const Vector pi = stationary_distribution(p);
  // pi = (1/2, 1/2): four cells each differ from the product by 0.2.
  EXPECT_NEAR(brute_force_pair_tv(p, pi, 1), 0.4, 1e-15);
  EXPECT_NEAR(exact_beta_markov(p, pi, 1), brute_force_pair_tv(p, pi, 1), 1e-15);
}

TEST(ExactBeta, RandomChainsAgainstEnumeration) {
  Rng rng(77);
  for (int c = 0; c < 50; ++c) {
    const Matrix p = random_chain(rng, 4, false);
    const Vector pi = stationary_distribution(p);
    for (int q = 1; q <= 3; ++q)
      EXPECT_NEAR(exact_beta_markov(p, pi, q), brute_force_pair_tv(p, pi, q), 1e-12);
  }
}

TEST(ExactBeta, LazyChainsNonIncreasingInLag) {
  Rng rng(5);
  for (int c = 0; c < 30; ++c) {
    const Matrix p = random_chain(rng, 5, true);
    const auto seq = exact_beta_markov_sequence(p, stationary_distribution(p), 40);
    for (std::size_t q = 1; q < seq.size(); ++q) {
      EXPECT_LE(seq[q], seq[q - 1] + 1e-15);
      EXPECT_GE(seq[q], 0.0);
    }
  }
}

TEST(ExactBeta, SequenceAgreesWithMatrixPower) {
  Rng rng(8);
  const Matrix p = random_chain(rng, 6, true);
  const Vector pi = stationary_distribution(p);
  const auto seq = exact_beta_markov_sequence(p, pi, 20);
  for (int q = 0; q <= 20; ++q) EXPECT_NEAR(seq[q], exact_beta_markov(p, pi, q), 1e-13);
}

TEST(Profile, Conventions) {
  const auto poly = MixingProfile::polynomial(1.0, 2.0);
  EXPECT_EQ(poly.coefficient(0), 1.0);
  EXPECT_DOUBLE_EQ(poly.coefficient(1), 0.25);
  const auto iid = MixingProfile::iid();
  EXPECT_EQ(iid.coefficient(0), 1.0);
  EXPECT_EQ(iid.coefficient(7), 0.0);
  const auto ex = MixingProfile::exponential(1.0, std::log(2.0), Flavor::gamma);
  EXPECT_NEAR(ex.coefficient(3), 0.125, 1e-15);
  EXPECT_THROW(MixingProfile::tabulated({1.0, 0.5, 0.7}), InvalidArgument);
  EXPECT_THROW(MixingProfile::tabulated({0.9}), InvalidArgument);
  EXPECT_THROW(MixingProfile::polynomial(1.0, 0.0), InvalidArgument);
  const auto tab = MixingProfile::tabulated({1.0, 0.5, 0.25});
  EXPECT_EQ(tab.coefficient(10), 0.25);
}

TEST(Profile, ValuesInUnitIntervalAndNonIncreasing) {
  const std::vector<MixingProfile> profiles{
      MixingProfile::polynomial(3.0, 0.5), MixingProfile::exponential(2.0, 0.1),
      MixingProfile::tabulated({1.0, 0.9, 0.2}), MixingProfile::exact_markov(two_state(0.8), Vector::Constant(2, 0.5))};
  for (const auto& p : profiles) {
    const auto c = p.coefficients(30);
    for (std::size_t q = 0; q < c.size(); ++q) {
      EXPECT_GE(c[q], 0.0);
      EXPECT_LE(c[q], 1.0);
      if (q > 0) EXPECT_LE(c[q], c[q - 1]);
    }
  }
}

TEST(Renewal, CutoffOneIsIid) {
  const auto s = gen_renewal_chain(0.5, 1, 1000, 4);
  for (std::size_t t = 1; t < s.size(); ++t) EXPECT_NE(s.values[t], s.values[t - 1]);
  EXPECT_EQ(s.mixing_oracle->coefficient(1), 0.0);
}

TEST(Renewal, BlockLengthTailSlope) {
  const RenewalLaw law(0.5, 10000);
  Rng rng(99);
  const int draws = 2000000;
  std::vector<std::int64_t> lengths(draws);
  for (auto& l : lengths) l = law.draw_length(rng.uniform());
  std::vector<double> ks, tail;
  for (std::int64_t k = 4; k <= 256; k *= 2) {
    const auto above = std::count_if(lengths.begin(), lengths.end(), [k](auto l) { return l > k; });
    ks.push_back(static_cast<double>(k));
    tail.push_back(static_cast<double>(above) / draws);
  }
  EXPECT_NEAR(loglog_slope(ks, tail), -1.5, 0.1);
}

TEST(Renewal, StationaryResidualLaw) {
  const RenewalLaw law(1.0, 30);
  double total = 0.0;
  for (int j = 1; j <= 30; ++j) total += law.residual_pmf(j);
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(law.same_block(0), 1.0, 1e-12);
  EXPECT_EQ(law.same_block(30), 0.0);
}

TEST(Renewal, InducedChainIsStationary) {
  const RenewalLaw law(0.5, 12);
  const auto c = renewal_induced_chain(law, 3);
  EXPECT_NO_THROW(validate_stationary(c.transition, c.stationary));
}

TEST(Renewal, AnalyticCoefficientsMatchMatrixPowers) {
  const RenewalLaw law(0.7, 12);
  const auto c = renewal_induced_chain(law, 2);
  const auto exact = exact_beta_markov_sequence(c.transition, c.stationary, 30);
  const auto fast = renewal_chain_beta(law, 2, 30);
  for (int q = 0; q <= 30; ++q) EXPECT_NEAR(fast[q], exact[q], 1e-12) << "q=" << q;
}

// The cutoff makes the coefficients fall off faster than any power within
// a few octaves of L_max, so the fit window stops at L_max / 16.
TEST(Renewal, ExactCoefficientsDecayPolynomially) {
  for (double beta : {0.5, 1.5}) {
    const std::int64_t l_max = 4000;
    const RenewalLaw law(beta, l_max);
    const auto seq = renewal_chain_beta(law, 2, l_max / 2);
    std::vector<double> qs, vals;
    for (double q = 5; q <= l_max / 16; q *= 1.25) {
      qs.push_back(std::floor(q));
      vals.push_back(seq[static_cast<std::size_t>(std::floor(q))]);
    }
    EXPECT_NEAR(loglog_slope(qs, vals), -beta, 0.15) << "beta=" << beta;
  }
}

TEST(Renewal, BinningMatchesExactPairCoefficient) {
  const RenewalLaw law(0.5, 50);
  const auto s = gen_renewal_chain(law, 100000, 31, 10);
  const auto chain = renewal_induced_chain(law, 10);
  const double exact = exact_pair_beta_markov(chain.transition, chain.stationary, chain.state_values, 10);
  EXPECT_NEAR(exact, law.same_block(10) * 0.9, 1e-12);
  EXPECT_NEAR(estimate_beta_binning(s, 10, 10, BinningMode::distinct_values), exact, 0.05);
}

TEST(Renewal, RejectsBadParameters) {
  EXPECT_THROW(RenewalLaw(0.0, 10), InvalidArgument);
  EXPECT_THROW(RenewalLaw(0.5, 0), InvalidArgument);
}

TEST(Ar1, IidWhenCoefficientIsZero) {
  const auto s = gen_ar1(0.0, 50000, 1);
  EXPECT_NEAR(autocorrelation(s.values, 1), 0.0, 0.02);
  EXPECT_EQ(s.mixing_oracle->coefficient(1), 0.0);
}

TEST(Ar1, LagThreeAutocorrelation) {
  const auto s = gen_ar1(0.5, 100000, 12);
  EXPECT_NEAR(autocorrelation(s.values, 3), 0.125, 0.01);
  EXPECT_NEAR(s.mixing_oracle->coefficient(3), 0.125, 1e-15);
  EXPECT_EQ(s.mixing_oracle->flavor(), Flavor::gamma);
}

TEST(Ar1, Boundary) {
  EXPECT_NO_THROW(gen_ar1(-0.99, 10, 1));
  EXPECT_THROW(gen_ar1(1.0, 10, 1), InvalidArgument);
}

TEST(Binning, IidSampleIsNearZero) {
  const auto s = gen_iid_uniform(100000, 17);
  EXPECT_LE(estimate_beta_binning(s, 5, 8), 0.03);
}

TEST(Binning, ConstantSequence) {
  const auto s = gen_constant(0.3, 100000, 0);
  for (int q : {1, 5, 20}) EXPECT_NEAR(estimate_beta_binning(s, q, 8), 1.0 - 1.0 / 8, 0.01);
}

TEST(Binning, FiniteChainMatchesExact) {
  Matrix p(3, 3);
  p << 0.8, 0.15, 0.05, 0.1, 0.7, 0.2, 0.2, 0.2, 0.6;
  const Vector pi = stationary_distribution(p);
  const auto s = gen_finite_markov(p, {-1.0, 0.0, 2.0}, 100000, 8);
  for (int q = 1; q <= 10; ++q)
    EXPECT_NEAR(estimate_beta_binning(s, q, 3, BinningMode::distinct_values), exact_beta_markov(p, pi, q), 0.05);
}

TEST(Binning, TooFewObservations) {
  const auto s = gen_iid_uniform(500, 1);
  try {
    estimate_beta_binning(s, 1, 8);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("n >= 640"), std::string::npos);
  }
}

TEST(Dgp, MomentsAgreeAcrossSeeds) {
  const auto a = gen_ar1(0.3, 200000, 1).values;
  const auto b = gen_ar1(0.3, 200000, 2).values;
  for (int k = 1; k <= 4; ++k) {
    double ma = 0, mb = 0;
    for (double x : a) ma += std::pow(x, k);
    for (double x : b) mb += std::pow(x, k);
    ma /= a.size();
    mb /= b.size();
    // Standard errors of the first four moments are well below 0.1 here.
    EXPECT_NEAR(ma, mb, 0.1) << "moment " << k;
  }
}

TEST(Dgp, FactoryRejectsUnknownKeys) {
  nlohmann::json ok = {{"generator", "renewal"}, {"params", {{"beta", 0.5}, {"L_max", 100}}}, {"seed", 3}};
  const auto d = Dgp::from_json(ok);
  EXPECT_EQ(d.generate(100).values, gen_renewal_chain(0.5, 100, 100, 3).values);
  nlohmann::json bad = ok;
  bad["params"]["gamma"] = 1;
  EXPECT_THROW(Dgp::from_json(bad), ConfigError);
  nlohmann::json unknown = {{"generator", "arma"}};
  EXPECT_THROW(Dgp::from_json(unknown), ConfigError);
}

TEST(Sample, CsvCarriesProvenance) {
  const auto s = gen_iid_uniform(3, 5);
  const auto csv = to_csv(s);
  EXPECT_EQ(csv.rfind("# provenance {", 0), 0u);
  EXPECT_NE(csv.find("\"generator\":\"iid_uniform\""), std::string::npos);
}
