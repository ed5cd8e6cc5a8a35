#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mixlab/core/numeric.hpp"
#include "mixlab/core/random.hpp"
#include "mixlab/empirical/variance_bound.hpp"
#include "mixlab/mixing/markov.hpp"
#include "mixlab/ot/assignment.hpp"
#include "mixlab/ot/sinkhorn.hpp"
#include "mixlab/rates/pivotal.hpp"
#include "mixlab/report/io.hpp"

namespace mixlab::report {

struct CheckGroup {
  std::string name;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    if (ok) {
      ++passed;
    } else {
      if (failed == 0) first_failure = what;
      ++failed;
    }
  }
};

struct VerifySettings {
  int chains = 20;
  int h_per_chain = 10;
  int q_max = 50;
  std::vector<double> r_values{3.0, 4.0, 8.0};
  int tau_configs = 100;
  int sinkhorn_trials = 20;
  int beta_chains = 50;
  std::uint64_t seed = 1;
};

namespace bank {

inline mixing::Matrix random_chain(Rng& rng, int m) {
  mixing::Matrix p(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double u = rng.uniform();
      p(i, j) = u * u * u + 1e-3;
    }
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

inline ot::Cloud gaussian_cloud(Rng& rng, int n, int d) {
  ot::Cloud c(n, d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) c(i, k) = rng.normal();
  return c;
}

inline double enumerate_w2(const ot::Cloud& x, const ot::Cloud& y) {
  std::vector<int> perm(static_cast<std::size_t>(x.rows()));
  std::iota(perm.begin(), perm.end(), 0);
  const auto c = ot::squared_cost(x, y);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) s += c(static_cast<Eigen::Index>(i), perm[i]);
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(x.rows());
}

// TV between the joint law of (S_0, S_q) and the product of the marginals,
// with P^q built by plain repeated multiplication.
inline double brute_force_pair_tv(const mixing::Matrix& p, const mixing::Vector& pi, int q) {
  mixing::Matrix pq = mixing::Matrix::Identity(p.rows(), p.cols());
  for (int i = 0; i < q; ++i) pq = pq * p;
  double s = 0.0;
  for (Eigen::Index x = 0; x < p.rows(); ++x)
    for (Eigen::Index y = 0; y < p.cols(); ++y) s += std::abs(pi(x) * pq(x, y) - pi(x) * pi(y));
  return 0.5 * s;
}

}  // namespace bank

inline CheckGroup check_variance_bound(const VerifySettings& s) {
  CheckGroup g{"variance_bound"};
  Rng rng(derive_seed(s.seed, 1));
  for (int c = 0; c < s.chains; ++c) {
    const auto p = bank::random_chain(rng, 5);
    for (int k = 0; k < s.h_per_chain; ++k) {
      std::vector<double> h(5);
      for (double& v : h) v = rng.normal();
      for (int q = 1; q <= s.q_max; ++q)
        for (double r : s.r_values) {
          const auto rep = empirical::verify_variance_bound(p, h, q, r);
          g.record(rep.holds, "chain " + std::to_string(c) + " h " + std::to_string(k) + " q " +
                                  std::to_string(q) + " r " + fmt(r) + ": lhs " + fmt(rep.lhs) + " > rhs " +
                                  fmt(rep.rhs));
        }
    }
  }
  return g;
}

inline CheckGroup check_tau(const VerifySettings& s) {
  using rates::MixingProfile;
  CheckGroup g{"tau_q"};
  Rng rng(derive_seed(s.seed, 2));
  auto entropy = [](double alpha) {
    classes::EntropyModel m;
    m.alpha = alpha;
    return classes::EntropyBound(m);
  };
  for (double d : {1e-3, 0.1, 1.0})
    g.record(rates::tau_q(MixingProfile::iid(), entropy(1.0), d, 1000) == 1, "iid tau is not 1");
  for (int t = 0; t < s.tau_configs; ++t) {
    const auto p = t % 2 ? MixingProfile::polynomial(rng.uniform(0.2, 1.0), rng.uniform(0.1, 3.0))
                         : MixingProfile::exponential(rng.uniform(0.2, 1.0), rng.uniform(0.01, 1.0));
    const auto h = entropy(rng.uniform(0.0, 5.0));
    const double delta = std::exp(rng.uniform(std::log(1e-3), 0.0));
    const auto n = static_cast<std::int64_t>(std::exp(rng.uniform(0.0, std::log(10000.0))));
    const auto a = rates::tau_q(p, h, delta, n, rates::TauMethod::scan);
    const auto b = rates::tau_q(p, h, delta, n, rates::TauMethod::bisection);
    g.record(a == b, "config " + std::to_string(t) + ": scan " + std::to_string(a) + " vs bisection " +
                         std::to_string(b));
    std::int64_t prev = 0;
    bool mono = true;
    for (double d : log_grid(1e-3, 1.0, 4)) {
      const auto v = rates::tau_q(p, h, d, n);
      mono = mono && v >= prev;
      prev = v;
    }
    g.record(mono, "config " + std::to_string(t) + ": tau decreases in delta");
  }
  return g;
}

inline CheckGroup check_sinkhorn(const VerifySettings& s) {
  CheckGroup g{"sinkhorn"};
  Rng rng(derive_seed(s.seed, 3));
  for (int t = 0; t < s.sinkhorn_trials; ++t) {
    const int n = 2 + static_cast<int>(rng.below(9));
    const auto x = bank::gaussian_cloud(rng, n, 2), y = bank::gaussian_cloud(rng, n, 2);
    const double eps = 0.2 + rng.uniform();
    g.record(std::abs(ot::sinkhorn_divergence(x, x, eps, 50)) <= 1e-10, "identical clouds diverge");
    g.record(ot::sinkhorn_divergence(x, y, eps, 300) >= -1e-8, "negative divergence");
    const auto c = ot::squared_cost(x, y);
    auto st = ot::sinkhorn_init(c, eps);
    ot::sinkhorn_iterate(c, st);
    double prev = ot::sinkhorn_objective(st);
    bool mono = true;
    for (int k = 0; k < 50; ++k) {
      ot::sinkhorn_iterate(c, st);
      const double v = ot::sinkhorn_objective(st);
      mono = mono && v >= prev - 1e-10;
      prev = v;
    }
    g.record(mono, "dual objective decreased");
    if (n <= 6) {
      const double a = ot::exact_w2(x, y), b = bank::enumerate_w2(x, y);
      g.record(std::abs(a - b) <= 1e-12, "assignment " + fmt(a) + " vs enumeration " + fmt(b));
    }
    const auto x1 = bank::gaussian_cloud(rng, n, 1), y1 = bank::gaussian_cloud(rng, n, 1);
    const double a = ot::exact_w2_sorted_1d(x1, y1), b = ot::exact_w2_assignment(x1, y1);
    g.record(std::abs(a - b) <= 1e-12, "sorted " + fmt(a) + " vs assignment " + fmt(b));
  }
  return g;
}

inline CheckGroup check_beta_oracle(const VerifySettings& s) {
  CheckGroup g{"beta_oracle"};
  Rng rng(derive_seed(s.seed, 4));
  for (int c = 0; c < s.beta_chains; ++c) {
    const auto p = bank::random_chain(rng, 4);
    const auto pi = mixing::stationary_distribution(p);
    for (int q = 1; q <= 3; ++q) {
      const double a = mixing::exact_beta_markov(p, pi, q), b = bank::brute_force_pair_tv(p, pi, q);
      g.record(std::abs(a - b) <= 1e-12, "chain " + std::to_string(c) + " q " + std::to_string(q) + ": " +
                                             fmt(a) + " vs " + fmt(b));
    }
  }
  return g;
}

inline std::vector<CheckGroup> run_verify_bank(const VerifySettings& s) {
  return {check_variance_bound(s), check_tau(s), check_sinkhorn(s), check_beta_oracle(s)};
}

}  // namespace mixlab::report
