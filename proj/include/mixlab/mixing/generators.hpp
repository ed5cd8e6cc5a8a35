#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "mixlab/core/error.hpp"
#include "mixlab/core/random.hpp"
#include "mixlab/mixing/markov.hpp"
#include "mixlab/mixing/sample.hpp"

namespace mixlab::mixing {

namespace detail {

// Index of the first cumulative weight exceeding u.
inline std::size_t draw_from_cumulative(const std::vector<double>& cum, double u) {
  auto it = std::upper_bound(cum.begin(), cum.end(), u * cum.back());
  return std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), cum.size() - 1);
}

inline void require_n(std::int64_t n) {
  if (n < 1) throw InvalidArgument("mixing_dgp", "sample size n must be at least 1");
}

}  // namespace detail

// ---------------------------------------------------------------- Markov

inline SequenceSample gen_finite_markov(const Matrix& transition,
                                        const std::vector<double>& state_values, std::int64_t n,
                                        std::uint64_t seed) {
  detail::require_n(n);
  validate_transition(transition);
  const auto m = static_cast<std::size_t>(transition.rows());
  if (state_values.size() != m)
    throw InvalidArgument("mixing_dgp", "state_values length must match the transition matrix");
  const Vector pi = stationary_distribution(transition);

  std::vector<double> start_cum(m);
  std::vector<std::vector<double>> row_cum(m, std::vector<double>(m));
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) start_cum[i] = (acc += pi(static_cast<Eigen::Index>(i)));
  for (std::size_t i = 0; i < m; ++i) {
    acc = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      row_cum[i][j] = (acc += transition(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  }

  Rng rng(seed);
  SequenceSample s;
  s.values.resize(static_cast<std::size_t>(n));
  std::size_t state = detail::draw_from_cumulative(start_cum, rng.uniform());
  s.values[0] = state_values[state];
  for (std::int64_t t = 1; t < n; ++t) {
    state = detail::draw_from_cumulative(row_cum[state], rng.uniform());
    s.values[static_cast<std::size_t>(t)] = state_values[state];
  }
  s.generator_id = "markov";
  std::vector<std::vector<double>> rows(m, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      rows[i][j] = transition(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  s.params = {{"transition", rows}, {"state_values", state_values}};
  s.seed = seed;
  s.mixing_oracle = MixingProfile::exact_markov(transition, pi);
  std::vector<double> w(pi.data(), pi.data() + pi.size());
  s.marginal = Marginal::discrete(state_values, w);
  return s;
}

// ---------------------------------------------------------------- Renewal

// Block-length law P(L = k) proportional to k^-(2+beta) on 1..L_max, with
// the tables needed for stationary sampling. Building the tables is O(L_max);
// one instance can serve any number of samples.
class RenewalLaw {
 public:
  RenewalLaw(double beta, std::int64_t l_max) : beta_(beta), l_max_(l_max) {
    if (!(beta > 0.0)) throw InvalidArgument("mixing_dgp", "renewal tail exponent must be > 0");
    if (l_max < 1) throw InvalidArgument("mixing_dgp", "renewal cutoff L_max must be >= 1");
    const auto L = static_cast<std::size_t>(l_max);
    pmf_.resize(L + 1, 0.0);
    for (std::size_t k = 1; k <= L; ++k) pmf_[k] = std::pow(static_cast<double>(k), -(2.0 + beta));
    // Normalize by summing smallest terms first.
    double z = 0.0;
    for (std::size_t k = L; k >= 1; --k) z += pmf_[k];
    for (auto& p : pmf_) p /= z;
    normalizer_ = z;
    // survival_[k] = P(L >= k), k = 1..L_max+1
    survival_.assign(L + 2, 0.0);
    for (std::size_t k = L; k >= 1; --k) survival_[k] = survival_[k + 1] + pmf_[k];
    survival_[1] = 1.0;
    double mean = 0.0;
    for (std::size_t k = L; k >= 1; --k) mean += survival_[k];
    mean_ = mean;
    // Residual life R: P(R = j) = P(L >= j) / E[L]; residual_tail_[j] = P(R >= j).
    residual_tail_.assign(L + 2, 0.0);
    for (std::size_t j = L; j >= 1; --j) residual_tail_[j] = residual_tail_[j + 1] + survival_[j] / mean_;
    residual_tail_[1] = 1.0;
  }

  double beta() const { return beta_; }
  std::int64_t l_max() const { return l_max_; }
  double mean_length() const { return mean_; }
  // sum_{k=1}^{L_max} k^{-(2+beta)}
  double normalizer() const { return normalizer_; }
  double pmf(std::int64_t k) const { return k >= 1 && k <= l_max_ ? pmf_[static_cast<std::size_t>(k)] : 0.0; }
  // P(L >= k)
  double survival(std::int64_t k) const {
    if (k <= 1) return 1.0;
    return k > l_max_ ? 0.0 : survival_[static_cast<std::size_t>(k)];
  }
  // Stationary law of the remaining block length (current step included).
  double residual_pmf(std::int64_t j) const {
    return j >= 1 && j <= l_max_ ? survival(j) / mean_ : 0.0;
  }
  // P(R > q): probability that times 0 and q share a block.
  double same_block(std::int64_t q) const {
    if (q < 0) return 1.0;
    const std::int64_t j = q + 1;
    return j > l_max_ ? 0.0 : residual_tail_[static_cast<std::size_t>(j)];
  }

  std::int64_t draw_length(double u) const { return largest_above(survival_, u); }
  std::int64_t draw_residual(double u) const { return largest_above(residual_tail_, u); }

 private:
  // max{k in 1..L_max : tail[k] > u}; tail is non-increasing with tail[1] = 1.
  std::int64_t largest_above(const std::vector<double>& tail, double u) const {
    std::size_t lo = 1, hi = static_cast<std::size_t>(l_max_);
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo + 1) / 2;
      if (tail[mid] > u)
        lo = mid;
      else
        hi = mid - 1;
    }
    return static_cast<std::int64_t>(lo);
  }

  double beta_;
  std::int64_t l_max_;
  double mean_ = 1.0;
  double normalizer_ = 1.0;
  std::vector<double> pmf_, survival_, residual_tail_;
};

// levels == 0 keeps Uniform[0,1] values; levels = m > 0 maps them to floor(U m).
inline SequenceSample gen_renewal_chain(const RenewalLaw& law, std::int64_t n, std::uint64_t seed,
                                        int levels = 0) {
  detail::require_n(n);
  if (levels < 0) throw InvalidArgument("mixing_dgp", "renewal levels must be >= 0");
  Rng rng(seed);
  auto draw_value = [&]() {
    const double u = rng.uniform();
    return levels == 0 ? u : std::floor(u * levels);
  };
  SequenceSample s;
  s.values.resize(static_cast<std::size_t>(n));
  std::int64_t remaining = law.draw_residual(rng.uniform());
  double value = draw_value();
  for (std::int64_t t = 0; t < n; ++t) {
    if (remaining == 0) {
      remaining = law.draw_length(rng.uniform());
      value = draw_value();
    }
    s.values[static_cast<std::size_t>(t)] = value;
    --remaining;
  }
  s.generator_id = "renewal";
  s.params = {{"beta", law.beta()}, {"L_max", law.l_max()}, {"levels", levels}};
  s.seed = seed;
  // Asymptotic constant of P(R > q) ~ c q^-beta.
  const double c = 1.0 / (law.beta() * (1.0 + law.beta()) * law.normalizer() * law.mean_length());
  s.mixing_oracle = law.l_max() == 1 ? MixingProfile::iid()
                                     : MixingProfile::polynomial(std::min(c, 1.0), law.beta());
  if (levels == 0) {
    s.marginal = Marginal(UniformLaw{0.0, 1.0});
  } else {
    std::vector<double> atoms(levels), w(levels, 1.0 / levels);
    for (int i = 0; i < levels; ++i) atoms[i] = i;
    s.marginal = Marginal::discrete(atoms, w);
  }
  return s;
}

inline SequenceSample gen_renewal_chain(double beta, std::int64_t l_max, std::int64_t n,
                                        std::uint64_t seed, int levels = 0) {
  return gen_renewal_chain(RenewalLaw(beta, l_max), n, seed, levels);
}

// Finite Markov chain on (r, v): r = steps left in the current block
// (current step included), v = discretized value. State index (r-1)*levels + v.
struct InducedChain {
  Matrix transition;
  Vector stationary;
  std::vector<double> state_values;
};

inline InducedChain renewal_induced_chain(const RenewalLaw& law, int levels) {
  if (levels < 1) throw InvalidArgument("mixing_dgp", "induced chain needs levels >= 1");
  const std::int64_t L = law.l_max();
  const Eigen::Index size = static_cast<Eigen::Index>(L) * levels;
  InducedChain c;
  c.transition = Matrix::Zero(size, size);
  c.stationary = Vector::Zero(size);
  c.state_values.resize(static_cast<std::size_t>(size));
  auto idx = [levels](std::int64_t r, int v) {
    return static_cast<Eigen::Index>((r - 1) * levels + v);
  };
  for (std::int64_t r = 1; r <= L; ++r) {
    for (int v = 0; v < levels; ++v) {
      const Eigen::Index from = idx(r, v);
      c.state_values[static_cast<std::size_t>(from)] = v;
      c.stationary(from) = law.residual_pmf(r) / levels;
      if (r > 1) {
        c.transition(from, idx(r - 1, v)) = 1.0;
      } else {
        for (std::int64_t l = 1; l <= L; ++l)
          for (int w = 0; w < levels; ++w) c.transition(from, idx(l, w)) = law.pmf(l) / levels;
      }
    }
  }
  // Renormalize the regeneration rows and the stationary vector against rounding.
  for (Eigen::Index i = 0; i < size; ++i) c.transition.row(i) /= c.transition.row(i).sum();
  c.stationary /= c.stationary.sum();
  return c;
}

// Exact coefficient of the induced (r, v) chain for q = 0..q_max, computed
// from renewal recursions in O(q_max * L_max) instead of matrix powers.
// levels == 0 stands for continuous values.
inline std::vector<double> renewal_chain_beta(const RenewalLaw& law, int levels, std::int64_t q_max) {
  if (q_max < 0) throw InvalidArgument("mixing_dgp", "lag q must be nonnegative");
  const std::int64_t L = law.l_max();
  const auto Ls = static_cast<std::size_t>(L);
  std::vector<double> pi_r(Ls + 1, 0.0);
  for (std::int64_t r = 1; r <= L; ++r) pi_r[static_cast<std::size_t>(r)] = law.residual_pmf(r);
  const double inv_m = levels == 0 ? 0.0 : 1.0 / levels;

  // tv[t] = TV(residual law t steps after a regeneration, stationary residual law).
  std::vector<double> tv(static_cast<std::size_t>(q_max) + 1, 0.0);
  std::vector<double> a(Ls + 2, 0.0), next(Ls + 2, 0.0);
  for (std::int64_t j = 1; j <= L; ++j) a[static_cast<std::size_t>(j)] = law.pmf(j);
  for (std::int64_t t = 0; t <= q_max; ++t) {
    double d = 0.0;
    for (std::size_t j = 1; j <= Ls; ++j) d += std::abs(a[j] - pi_r[j]);
    tv[static_cast<std::size_t>(t)] = 0.5 * d;
    const double renew = a[1];
    for (std::size_t j = 1; j <= Ls; ++j) next[j] = a[j + 1] + renew * law.pmf(static_cast<std::int64_t>(j));
    std::swap(a, next);
  }

  std::vector<double> out(static_cast<std::size_t>(q_max) + 1, 0.0);
  out[0] = 1.0;
  for (std::int64_t q = 1; q <= q_max; ++q) {
    double b = 0.0;
    for (std::int64_t r = q + 1; r <= L; ++r)
      b += pi_r[static_cast<std::size_t>(r)] * (1.0 - pi_r[static_cast<std::size_t>(r - q)] * inv_m);
    for (std::int64_t r = 1; r <= std::min(q, L); ++r)
      b += pi_r[static_cast<std::size_t>(r)] * tv[static_cast<std::size_t>(q - r)];
    out[static_cast<std::size_t>(q)] = std::clamp(b, 0.0, 1.0);
  }
  return out;
}

// ---------------------------------------------------------------- AR(1)

inline SequenceSample gen_ar1(double a, std::int64_t n, std::uint64_t seed) {
  detail::require_n(n);
  if (!(std::abs(a) < 1.0))
    throw InvalidArgument("mixing_dgp", "AR(1) coefficient must satisfy |a| < 1 (nonstationary otherwise)");
  Rng rng(seed);
  const double sd0 = 1.0 / std::sqrt(1.0 - a * a);
  SequenceSample s;
  s.values.resize(static_cast<std::size_t>(n));
  double x = sd0 * rng.normal();
  s.values[0] = x;
  for (std::int64_t t = 1; t < n; ++t) {
    x = a * x + rng.normal();
    s.values[static_cast<std::size_t>(t)] = x;
  }
  s.generator_id = "ar1";
  s.params = {{"a", a}};
  s.seed = seed;
  const double rate = a == 0.0 ? std::numeric_limits<double>::infinity() : -std::log(std::abs(a));
  s.mixing_oracle = MixingProfile::exponential(1.0, rate, Flavor::gamma);
  s.marginal = Marginal(NormalLaw{0.0, sd0});
  return s;
}

// ---------------------------------------------------------------- trivial DGPs

inline SequenceSample gen_iid_uniform(std::int64_t n, std::uint64_t seed) {
  detail::require_n(n);
  Rng rng(seed);
  SequenceSample s;
  s.values.resize(static_cast<std::size_t>(n));
  for (auto& v : s.values) v = rng.uniform();
  s.generator_id = "iid_uniform";
  s.seed = seed;
  s.mixing_oracle = MixingProfile::iid();
  s.marginal = Marginal(UniformLaw{0.0, 1.0});
  return s;
}

// Constant sequence at `value`, compared against a Uniform[0,1] reference law.
inline SequenceSample gen_constant(double value, std::int64_t n, std::uint64_t seed) {
  detail::require_n(n);
  SequenceSample s;
  s.values.assign(static_cast<std::size_t>(n), value);
  s.generator_id = "constant";
  s.params = {{"value", value}};
  s.seed = seed;
  s.mixing_oracle = MixingProfile::tabulated({1.0});
  s.marginal = Marginal(UniformLaw{0.0, 1.0});
  return s;
}

}  // namespace mixlab::mixing
