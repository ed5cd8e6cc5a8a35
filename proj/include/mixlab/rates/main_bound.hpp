#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mixlab/core/numeric.hpp"
#include "mixlab/rates/pivotal.hpp"

namespace mixlab::rates {

struct RateBound {
  double a = 0.0;
  double tail_term = 0.0;
  double total = 0.0;
  std::int64_t tau_sigma = 0;
  double lambda_sigma = 0.0;
  double integral_residual = 0.0;  // integral(a) - a at the solution (<= 0)
};

// Monotone majorants of Lambda(tau_q(delta)) and R(u) = Lambda(u)(1 + H(u))
// on a geometric grid, with exact cumulative integrals of sqrt(R) per cell.
class ChainingIntegrand {
 public:
  ChainingIntegrand(const classes::EntropyBound& h, const MixingProfile& profile, std::int64_t n,
                    double r, double lowest_scale, int per_decade = 64)
      : h_(h) {
    const double sigma = h.sigma();
    grid_ = log_grid(std::min(lowest_scale, sigma), sigma, per_decade);
    const std::size_t m = grid_.size();
    CoefficientTable beta(profile);
    const std::int64_t tau_top = tau_q_cached(beta, h, sigma, n);
    const auto lam = lambda_table(beta, tau_top, r);
    lam_.resize(m);
    double run = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::int64_t t = std::min(tau_q_cached(beta, h, grid_[j], n), tau_top);
      run = std::max(run, lam[static_cast<std::size_t>(t)]);
      lam_[j] = run;
    }
    // Suffix supremum of the cell-wise upper bound lam_[j+1] (1 + H) over [grid_j, sigma].
    sup_from_.assign(m, 0.0);
    sup_from_[m - 1] = lam_[m - 1] * (1.0 + h(sigma));
    for (std::size_t j = m - 1; j-- > 0;)
      sup_from_[j] = std::max(lam_[j + 1] * (1.0 + h(grid_[j])), sup_from_[j + 1]);
    cum_.assign(m, 0.0);
    for (std::size_t j = m - 1; j-- > 0;)
      cum_[j] = cum_[j + 1] + cell_integral(j, grid_[j], grid_[j + 1]);
  }

  // Non-increasing majorant R-bar(u).
  double rbar(double u) const {
    if (u < grid_.front()) return lam_.front() * (1.0 + h_(u));
    const std::size_t j = cell(u);
    if (j + 1 >= grid_.size()) return sup_from_.back();
    return std::max(lam_[j + 1] * (1.0 + h_(u)), sup_from_[j + 1]);
  }

  // Non-decreasing majorant of Lambda(tau_q(delta)).
  double lambda_bar(double u) const {
    if (u <= grid_.front()) return lam_.front();
    const std::size_t j = cell(u);
    return j + 1 >= grid_.size() ? lam_.back() : lam_[j + 1];
  }

  // Integral of sqrt(R-bar) from lo to sigma.
  double integral_from(double lo) const {
    if (lo >= grid_.back()) return 0.0;
    if (lo < grid_.front()) {
      const double l0 = lam_.front();
      return cum_.front() +
             integrate_log([&](double u) { return std::sqrt(l0 * (1.0 + h_(u))); }, lo, grid_.front());
    }
    const std::size_t j = cell(lo);
    return cum_[j + 1] + cell_integral(j, lo, grid_[j + 1]);
  }

  const std::vector<double>& grid() const { return grid_; }

 private:
  std::size_t cell(double u) const {
    auto it = std::upper_bound(grid_.begin(), grid_.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - grid_.begin());
    return k == 0 ? 0 : std::min(k - 1, grid_.size() - 1);
  }

  double cell_integral(std::size_t j, double lo, double hi) const {
    if (hi <= lo) return 0.0;
    const double l = lam_[j + 1], floor = sup_from_[j + 1];
    return integrate_log([&](double u) { return std::sqrt(std::max(l * (1.0 + h_(u)), floor)); }, lo, hi);
  }

  const classes::EntropyBound& h_;
  std::vector<double> grid_;
  std::vector<double> lam_;
  std::vector<double> sup_from_;
  std::vector<double> cum_;
};

// Solves the smallest a in (0, 8 sqrt(n) sigma] with
//   int_{a / (64 sqrt n)}^sigma sqrt(R-bar(u)) du <= a
// and returns a + tail, tail = b tau(sigma)(1 + H(sigma))/sqrt(n) for finite r.
// For r = inf the tail uses sigma in place of b.
inline RateBound main_bound(const classes::EntropyBound& h, const MixingProfile& profile, std::int64_t n,
                            double r) {
  if (n < 1) throw InvalidArgument(kModule, "main_bound needs n >= 1");
  if (!(r > 2.0)) throw InvalidArgument(kModule, "main_bound needs r > 2");
  const double sigma = h.sigma();
  const double sn = std::sqrt(static_cast<double>(n));
  const double a_max = 8.0 * sn * sigma;
  const ChainingIntegrand integrand(h, profile, n, r, sigma / (256.0 * sn));

  auto ok = [&](double a) { return integrand.integral_from(a / (64.0 * sn)) <= a; };
  if (!ok(a_max))
    throw NumericalError(kModule, "no chaining budget a in (0, 8 sqrt(n) sigma]; sigma is below the admissible scale");
  // Work in log a; the integral is at least sigma - lo, so a below sigma/2 never qualifies.
  double lo = std::log(sigma * 1e-3), hi = std::log(a_max);
  if (ok(std::exp(lo))) hi = lo;
  for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ok(std::exp(mid)))
      hi = mid;
    else
      lo = mid;
  }
  RateBound out;
  out.a = std::exp(hi);
  CoefficientTable beta(profile);
  out.tau_sigma = tau_q_cached(beta, h, sigma, n);
  out.lambda_sigma = integrand.lambda_bar(sigma);
  const double scale = std::isinf(r) ? sigma : h.b();
  out.tail_term = scale * static_cast<double>(out.tau_sigma) * (1.0 + h(sigma)) / sn;
  out.total = out.a + out.tail_term;
  out.integral_residual = integrand.integral_from(out.a / (64.0 * sn)) - out.a;
  return out;
}

}  // namespace mixlab::rates
