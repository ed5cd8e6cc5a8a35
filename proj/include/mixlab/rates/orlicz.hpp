#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "mixlab/core/error.hpp"
#include "mixlab/core/numeric.hpp"

namespace mixlab::rates {

inline constexpr const char* kModule = "rate_theory";

// phi(x) = x^{r/2} on [0, inf). c_phi^2 = 1 + sup_{x>=0} (x - x^{r/2}).
// The supremum is attained at x* = (2/r)^{1/(r/2 - 1)}.
inline double c_phi(double r) {
  if (!(r > 2.0))
    throw InvalidArgument(kModule, "c_phi needs r > 2 (linear phi is outside the Orlicz family)");
  if (std::isinf(r)) return std::sqrt(2.0);
  const double p = r / 2.0;
  const double xs = std::pow(1.0 / p, 1.0 / (p - 1.0));
  const double gap = xs - std::pow(xs, p);
  return std::sqrt(1.0 + gap);
}

struct OrliczPower {
  double r;
  double c;
  explicit OrliczPower(double r_) : r(r_), c(c_phi(r_)) {}
  double phi(double x) const { return std::pow(x, r / 2.0); }
};

// Empirical Orlicz norm of h over the sample: smallest t > 0 with
// mean(phi(h^2 / t^2)) <= 1, i.e. the L_r norm of h under the empirical law.
inline double orlicz_norm(std::span<const double> h, double r) {
  if (h.empty()) throw InvalidArgument(kModule, "orlicz_norm needs a nonempty sample");
  if (!(r > 2.0)) throw InvalidArgument(kModule, "orlicz_norm needs r > 2");
  double mx = 0.0;
  for (double v : h) mx = std::max(mx, std::abs(v));
  if (mx == 0.0) return 0.0;
  if (std::isinf(r)) return mx;
  // mean((|h|/t)^r) <= 1 has the closed-form solution t = (mean |h|^r)^{1/r};
  // scaling by the max keeps the powers in range.
  std::vector<double> terms(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) terms[i] = std::pow(std::abs(h[i]) / mx, r);
  return mx * std::pow(pairwise_sum(terms) / static_cast<double>(h.size()), 1.0 / r);
}

// Orlicz norm under a finite law with atoms values[i] and weights w[i]:
// smallest t with sum_i w_i phi(values_i^2 / t^2) <= 1, found by bisection
// on t to relative tolerance 1e-10.
inline double orlicz_norm_weighted(std::span<const double> values, std::span<const double> w, double r) {
  if (values.size() != w.size() || values.empty())
    throw InvalidArgument(kModule, "orlicz_norm_weighted needs matching nonempty values and weights");
  if (!(r > 2.0)) throw InvalidArgument(kModule, "orlicz_norm_weighted needs r > 2");
  double mx = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (w[i] > 0.0) mx = std::max(mx, std::abs(values[i]));
  if (mx == 0.0) return 0.0;
  if (std::isinf(r)) return mx;
  auto expect_phi = [&](double t) {
    std::vector<double> terms(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      terms[i] = w[i] * std::pow(values[i] * values[i] / (t * t), r / 2.0);
    return pairwise_sum(terms);
  };
  // At t = mx the expectation is at most 1; at t = 0+ it diverges.
  return bisect_first_true(mx * 1e-12, mx, [&](double t) { return expect_phi(t) <= 1.0; }, 1e-10);
}

}  // namespace mixlab::rates
