#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mixlab/core/random.hpp"
#include "mixlab/ot/assignment.hpp"
#include "mixlab/ot/cloud.hpp"
#include "mixlab/ot/compare.hpp"
#include "mixlab/ot/sinkhorn.hpp"

using namespace mixlab;
using namespace mixlab::ot;

namespace {

Cloud random_cloud(Rng& rng, int n, int d, double scale = 1.0) {
  Cloud c(n, d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) c(i, k) = scale * rng.normal();
  return c;
}

Cloud shuffled(const Cloud& c, Rng& rng) {
  std::vector<int> idx(static_cast<std::size_t>(c.rows()));
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
  Cloud out(c.rows(), c.cols());
  for (Eigen::Index i = 0; i < c.rows(); ++i) out.row(i) = c.row(idx[static_cast<std::size_t>(i)]);
  return out;
}

double brute_force_w2(const Cloud& x, const Cloud& y) {
  std::vector<int> perm(static_cast<std::size_t>(x.rows()));
  std::iota(perm.begin(), perm.end(), 0);
  const auto c = squared_cost(x, y);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) s += c(static_cast<Eigen::Index>(i), perm[i]);
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(x.rows());
}

}  // namespace

// ---------------------------------------------------------------- Sinkhorn

TEST(Sinkhorn, SingleAtomClosedForm) {
  const Cloud x = cloud_from_rows({{0.5, -1.0}});
  const Cloud y = cloud_from_rows({{2.0, 1.0}});
  const double d2 = 1.5 * 1.5 + 4.0;
  auto s = sinkhorn_init(squared_cost(x, y), 0.7);
  sinkhorn_iterate(squared_cost(x, y), s);
  EXPECT_NEAR(s.u(0), d2, 1e-12);
  EXPECT_NEAR(s.v(0), 0.0, 1e-12);
  for (std::int64_t k : {1, 5, 50}) EXPECT_NEAR(t_eps_k(x, y, 0.7, k), d2, 1e-12);
}

TEST(Sinkhorn, InitialDualIsZero) {
  Rng rng(1);
  const auto c = squared_cost(random_cloud(rng, 4, 2), random_cloud(rng, 5, 2));
  const auto s = sinkhorn_init(c, 0.3);
  EXPECT_EQ(s.v.size(), 5);
  EXPECT_TRUE((s.v.array() == 0.0).all());
  EXPECT_EQ(s.k, 0);
}

TEST(Sinkhorn, TwoPointMatchesScalarOracle) {
  // X = Y = {0, 1}: couplings [[1/2 - t, t], [t, 1/2 - t]], cost 2t.
  const double eps = 1.0;
  auto objective = [&](double t) {
    auto xlogx = [](double p) { return p > 0.0 ? p * std::log(4.0 * p) : 0.0; };
    return 2.0 * t + eps * (2.0 * xlogx(0.5 - t) + 2.0 * xlogx(t));
  };
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 300; ++it) {
    const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
    if (objective(a) < objective(b))
      hi = b;
    else
      lo = a;
  }
  const double oracle = objective(0.5 * (lo + hi));
  const Cloud x = cloud_from_rows({{0.0}, {1.0}});
  EXPECT_NEAR(t_eps_k(x, x, eps, 500), oracle, 1e-6);
}

TEST(Sinkhorn, DualObjectiveNonDecreasing) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = squared_cost(random_cloud(rng, 12, 3), random_cloud(rng, 9, 3));
    auto s = sinkhorn_init(c, 0.2 + rng.uniform());
    sinkhorn_iterate(c, s);
    double prev = sinkhorn_objective(s);
    const double first = prev;
    for (int k = 2; k <= 100; ++k) {
      sinkhorn_iterate(c, s);
      const double cur = sinkhorn_objective(s);
      EXPECT_GE(cur, prev - 1e-10);
      prev = cur;
    }
    EXPECT_LE(first, prev + 1e-10);
  }
}

TEST(Sinkhorn, IdenticalCloudsContract) {
  Rng rng(11);
  // Small diameter relative to epsilon keeps the Hilbert-metric contraction strong.
  const Cloud x = random_cloud(rng, 10, 2, 0.3);
  const auto c = squared_cost(x, x);
  auto s = sinkhorn_init(c, 1.0);
  std::vector<double> diffs;
  Eigen::VectorXd prev = s.u;
  for (int k = 0; k < 40; ++k) {
    sinkhorn_iterate(c, s);
    diffs.push_back((s.u - prev).lpNorm<Eigen::Infinity>());
    prev = s.u;
  }
  for (std::size_t k = 2; k < diffs.size(); ++k) {
    if (diffs[k] < 1e-13) break;
    EXPECT_LE(diffs[k], diffs[k - 1] * (1.0 + 1e-9));
  }
  // Geometric decay: 30 steps shrink the update by many orders of magnitude.
  EXPECT_LT(diffs[30], 1e-6 * diffs[1]);
}

TEST(Sinkhorn, TranslationInvariance) {
  Rng rng(5);
  Cloud x = random_cloud(rng, 8, 3), y = random_cloud(rng, 6, 3);
  const auto a = sinkhorn_run(squared_cost(x, y), 0.4, 30);
  Eigen::RowVectorXd shift(3);
  shift << 3.0, -2.0, 10.0;
  x.rowwise() += shift;
  y.rowwise() += shift;
  const auto b = sinkhorn_run(squared_cost(x, y), 0.4, 30);
  const Eigen::VectorXd ca = a.u.array() - a.u.mean(), cb = b.u.array() - b.u.mean();
  EXPECT_LT((ca - cb).lpNorm<Eigen::Infinity>(), 1e-9);
}

TEST(Sinkhorn, StableOnAdversarialScales) {
  Rng rng(9);
  const Cloud x = random_cloud(rng, 20, 2, 300.0), y = random_cloud(rng, 20, 2, 300.0);
  const auto c = squared_cost(x, y);
  auto s = sinkhorn_init(c, 1e-4);
  for (int k = 0; k < 20; ++k) ASSERT_NO_THROW(sinkhorn_iterate(c, s));
  EXPECT_TRUE(s.u.allFinite());
  EXPECT_TRUE(s.v.allFinite());
}

TEST(Sinkhorn, Errors) {
  const Cloud x = cloud_from_rows({{0.0}});
  EXPECT_THROW(t_eps_k(x, x, 0.0, 3), InvalidArgument);
  EXPECT_THROW(t_eps_k(x, x, 1.0, 0), InvalidArgument);
  EXPECT_THROW(squared_cost(Cloud(0, 1), x), InvalidArgument);
}

// ---------------------------------------------------------------- divergence

TEST(Divergence, IdenticalCloudsVanish) {
  Rng rng(2);
  const Cloud x = random_cloud(rng, 15, 3);
  EXPECT_NEAR(sinkhorn_divergence(x, x, 0.3, 50), 0.0, 1e-10);
}

TEST(Divergence, NonNegativeUpToSlack) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Cloud x = random_cloud(rng, 10, 2), y = random_cloud(rng, 12, 2, 0.5);
    EXPECT_GE(sinkhorn_divergence(x, y, 0.5, 500), -1e-8);
  }
}

TEST(Divergence, SmallEpsilonApproachesExact) {
  Rng rng(6);
  Cloud x(40, 1), y(40, 1);
  for (int i = 0; i < 40; ++i) {
    x(i, 0) = rng.normal();
    y(i, 0) = 1.0 + 0.7 * rng.normal();
  }
  const double exact = exact_w2(x, y);
  EXPECT_NEAR(sinkhorn_divergence(x, y, 0.01, 2000), exact, 0.05 * exact);
}

TEST(Divergence, PermutationInvariance) {
  Rng rng(13);
  const Cloud x = random_cloud(rng, 9, 2), y = random_cloud(rng, 9, 2);
  const double a = sinkhorn_divergence(x, y, 0.3, 40);
  const double b = sinkhorn_divergence(shuffled(x, rng), shuffled(y, rng), 0.3, 40);
  EXPECT_NEAR(a, b, 1e-12);
  EXPECT_NEAR(exact_w2(x, y), exact_w2(shuffled(x, rng), y), 1e-12);
}

// ---------------------------------------------------------------- exact W2

TEST(ExactW2, SinglePoint) {
  EXPECT_DOUBLE_EQ(exact_w2(cloud_from_rows({{1.0, 2.0}}), cloud_from_rows({{4.0, -2.0}})), 25.0);
}

TEST(ExactW2, MatchesPermutationEnumeration) {
  Rng rng(17);
  for (int n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      const Cloud x = random_cloud(rng, n, 3), y = random_cloud(rng, n, 3);
      EXPECT_NEAR(exact_w2(x, y), brute_force_w2(x, y), 1e-12);
    }
}

TEST(ExactW2, SortedMatchingAgreesWithAssignment) {
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(40));
    const Cloud x = random_cloud(rng, n, 1), y = random_cloud(rng, n, 1, 2.0);
    EXPECT_NEAR(exact_w2_sorted_1d(x, y), exact_w2_assignment(x, y), 1e-12);
  }
}

TEST(ExactW2, MetricProperties) {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    const Cloud a = random_cloud(rng, n, 2), b = random_cloud(rng, n, 2), c = random_cloud(rng, n, 2);
    const double ab = exact_w2(a, b), ba = exact_w2(b, a), bc = exact_w2(b, c), ac = exact_w2(a, c);
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_LE(std::sqrt(ac), std::sqrt(ab) + std::sqrt(bc) + 1e-9);
    EXPECT_EQ(exact_w2(a, shuffled(a, rng)), 0.0);
    EXPECT_GT(ab, 0.0);
  }
}

TEST(ExactW2, SizeMismatch) {
  EXPECT_THROW(exact_w2(cloud_from_rows({{0.0}}), cloud_from_rows({{0.0}, {1.0}})), InvalidArgument);
}

// ---------------------------------------------------------------- harness

TEST(Compare, IdenticalLawsShrinkWithN) {
  CompareConfig cfg;
  cfg.dgp_x = {{"generator", "iid_uniform"}};
  cfg.dgp_y = {{"generator", "iid_uniform"}};
  cfg.d = 4;
  cfg.beta = 3.0;
  cfg.n_grid = {16, 32, 64, 128, 256};
  cfg.replications = 3;
  cfg.base_seed = 5;
  const auto rep = compare_estimators(cfg);
  ASSERT_EQ(rep.rows.size(), 5u);
  EXPECT_LT(rep.rows.back().exact.mean, rep.rows.front().exact.mean);
  EXPECT_LT(rep.rows.back().sinkhorn.mean, rep.rows.front().sinkhorn.mean);
  EXPECT_EQ(rep.regime, "fast");
  EXPECT_EQ(rep.rows[2].k, 23);  // ceil(64^{3/4}) = ceil(22.6)
  EXPECT_TRUE(rep.exact_runtime.has_value());
}

TEST(Compare, ScheduleRegimeIsReported) {
  CompareConfig cfg;
  cfg.dgp_x = {{"generator", "iid_uniform"}};
  cfg.dgp_y = {{"generator", "iid_uniform"}};
  cfg.d = 4;
  cfg.n_grid = {16};
  cfg.beta = 0.5;
  EXPECT_EQ(compare_estimators(cfg).rows[0].regime, "slow");
  cfg.beta = 3.0;
  EXPECT_EQ(compare_estimators(cfg).rows[0].regime, "fast");
  cfg.beta = 1.0;
  EXPECT_THROW(compare_estimators(cfg), BoundaryError);
}

TEST(Compare, DeterministicValues) {
  CompareConfig cfg;
  cfg.dgp_x = {{"generator", "renewal"}, {"params", {{"beta", 3.0}, {"L_max", 256}}}};
  cfg.dgp_y = {{"generator", "iid_uniform"}};
  cfg.d = 4;
  cfg.n_grid = {20, 40};
  cfg.replications = 2;
  const auto a = compare_estimators(cfg);
  const auto b = compare_estimators(cfg);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].exact.replicas, b.rows[i].exact.replicas);
    EXPECT_EQ(a.rows[i].sinkhorn.replicas, b.rows[i].sinkhorn.replicas);
  }
}
