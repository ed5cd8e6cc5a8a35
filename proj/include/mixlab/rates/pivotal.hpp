#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "mixlab/classes/entropy.hpp"
#include "mixlab/mixing/profile.hpp"
#include "mixlab/rates/orlicz.hpp"

namespace mixlab::rates {

using mixing::MixingProfile;

// Lazily extended table of beta_0..beta_m. Exact Markov profiles are expensive
// per lag, so the table grows geometrically and is filled in one pass.
class CoefficientTable {
 public:
  explicit CoefficientTable(const MixingProfile& p) : profile_(&p) {}

  double operator[](std::int64_t q) {
    if (q < 0) throw InvalidArgument(kModule, "lag q must be nonnegative");
    ensure(q);
    return values_[static_cast<std::size_t>(q)];
  }

  // Single coefficient without growing the table (used by bisection on huge n).
  double direct(std::int64_t q) const {
    if (q < static_cast<std::int64_t>(values_.size())) return values_[static_cast<std::size_t>(q)];
    return profile_->coefficient(q);
  }

  void ensure(std::int64_t q) {
    if (q < static_cast<std::int64_t>(values_.size())) return;
    std::int64_t target = std::max<std::int64_t>(q, 2 * static_cast<std::int64_t>(values_.size()) + 16);
    if (std::holds_alternative<mixing::ExactMarkov>(profile_->kind())) {
      values_ = profile_->coefficients(target);
    } else {
      const std::int64_t start = static_cast<std::int64_t>(values_.size());
      values_.resize(static_cast<std::size_t>(target) + 1);
      for (std::int64_t i = start; i <= target; ++i)
        values_[static_cast<std::size_t>(i)] = profile_->coefficient(i);
    }
  }

 private:
  const MixingProfile* profile_;
  std::vector<double> values_;
};

// Lambda(q) = (1 - 2/r)^{-1} sum_{i=0}^q beta_i^{1 - 2/r}. At r = inf this is
// 1 + sum_{i=1}^q beta_i, the sup-norm analogue.
inline double lambda_phi_beta(const MixingProfile& profile, std::int64_t q, double r) {
  if (q < 0) throw InvalidArgument(kModule, "lambda needs q >= 0");
  if (!(r > 2.0)) throw InvalidArgument(kModule, "lambda needs r > 2");
  const double e = std::isinf(r) ? 1.0 : 1.0 - 2.0 / r;
  const auto beta = profile.coefficients(q);
  std::vector<double> terms(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) terms[i] = beta[i] > 0.0 ? std::pow(beta[i], e) : 0.0;
  return pairwise_sum(terms) / e;
}

// Running Lambda values for q = 0..q_max; entry q equals lambda_phi_beta(q).
inline std::vector<double> lambda_table(CoefficientTable& beta, std::int64_t q_max, double r) {
  const double e = std::isinf(r) ? 1.0 : 1.0 - 2.0 / r;
  beta.ensure(q_max);
  std::vector<double> out(static_cast<std::size_t>(q_max) + 1);
  // Kahan-compensated running sum keeps each prefix accurate for long tables.
  double s = 0.0, comp = 0.0;
  for (std::int64_t i = 0; i <= q_max; ++i) {
    const double b = beta[i];
    const double y = (b > 0.0 ? std::pow(b, e) : 0.0) - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
    out[static_cast<std::size_t>(i)] = s / e;
  }
  return out;
}

// 1 + sum over dyadic scales 2^{-k} sigma >= delta of H(2^{-k} sigma).
inline double dyadic_entropy_sum(const classes::EntropyBound& h, double delta) {
  const double sigma = h.sigma();
  double s = 1.0;
  for (int k = 0; k < 2000; ++k) {
    const double u = std::ldexp(sigma, -k);
    if (u < delta) break;
    s += h(u);
  }
  return s;
}

enum class TauMethod { automatic, scan, bisection };

// Smallest q in [0, n] with beta_q <= (q/n) * S(delta). Always >= 1 since beta_0 = 1.
inline std::int64_t tau_q(const MixingProfile& profile, const classes::EntropyBound& h, double delta,
                          std::int64_t n, TauMethod method = TauMethod::automatic) {
  if (n < 1) throw InvalidArgument(kModule, "tau_q needs n >= 1");
  if (!(delta > 0.0) || delta > h.sigma() * (1.0 + 1e-12))
    throw InvalidArgument(kModule, "tau_q needs 0 < delta <= sigma");
  const double s = dyadic_entropy_sum(h, delta);
  const double nd = static_cast<double>(n);
  auto crossed = [&](std::int64_t q, double bq) { return bq <= static_cast<double>(q) / nd * s; };

  if (method == TauMethod::automatic) method = n <= 10000 ? TauMethod::scan : TauMethod::bisection;
  if (method == TauMethod::scan) {
    const auto beta = profile.coefficients(n);
    for (std::int64_t q = 1; q <= n; ++q)
      if (crossed(q, beta[static_cast<std::size_t>(q)])) return q;
    return n;
  }
  // Both sides are monotone in q, so the crossing predicate is false...true.
  std::int64_t lo = 0, hi = n;  // pred(lo) false, pred(hi) true
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (crossed(mid, profile.coefficient(mid)))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// Same as tau_q but reusing a coefficient table (for many delta values).
inline std::int64_t tau_q_cached(CoefficientTable& beta, const classes::EntropyBound& h,
                                 double delta, std::int64_t n) {
  const double s = dyadic_entropy_sum(h, delta);
  const double nd = static_cast<double>(n);
  std::int64_t lo = 0, hi = n;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (beta.direct(mid) <= static_cast<double>(mid) / nd * s)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

struct FiniteClassBound {
  double value;
  std::int64_t q_star;
};

// inf over q in [1, n] of
//   sigma * pi(q) * sqrt(1 + log|F|) + b q (1 + log|F|)/sqrt(n) + b beta_q sqrt(n),
// with pi(q) = sqrt(c_phi^2 + 2 Lambda(q)); the leading constant is taken as 1.
inline FiniteClassBound finite_class_bound(double sigma, double b, double cardinality, std::int64_t n,
                                           const MixingProfile& profile, double r) {
  if (!(cardinality >= 1.0)) throw InvalidArgument(kModule, "finite class needs cardinality >= 1");
  if (!(sigma > 0.0) || !(b > 0.0)) throw InvalidArgument(kModule, "finite class needs sigma, b > 0");
  if (n < 1) throw InvalidArgument(kModule, "finite class needs n >= 1");
  const double cp = c_phi(r);
  const double lf = 1.0 + std::log(cardinality);
  const double sn = std::sqrt(static_cast<double>(n));
  CoefficientTable beta(profile);
  const auto lam = lambda_table(beta, n, r);
  FiniteClassBound best{std::numeric_limits<double>::infinity(), 1};
  for (std::int64_t q = 1; q <= n; ++q) {
    const double pi = std::sqrt(cp * cp + 2.0 * lam[static_cast<std::size_t>(q)]);
    const double v = sigma * pi * std::sqrt(lf) + b * static_cast<double>(q) * lf / sn + b * beta[q] * sn;
    if (v < best.value) best = {v, q};
  }
  return best;
}

}  // namespace mixlab::rates
