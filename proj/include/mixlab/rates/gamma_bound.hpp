#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mixlab/classes/entropy.hpp"
#include "mixlab/core/numeric.hpp"
#include "mixlab/rates/orlicz.hpp"

namespace mixlab::rates {

enum class PiCase { small_alpha = 1, middle_alpha = 2, large_alpha = 3 };

struct PiBreakdown {
  PiCase which;
  std::vector<double> terms;
  double value;
};

// Localized complexity Pi_n for gamma-mixing with gamma_q <~ q^{-gamma}, entropy
// D (theta/u)^alpha (log(B/u))^V in an L_r-type norm, r~ = min(r, 2).
inline PiBreakdown pi_n_terms(const classes::EntropyModel& m, double gamma, double sigma, double n) {
  if (!(gamma > 0.0)) throw InvalidArgument(kModule, "pi_n needs gamma > 0");
  if (!(sigma > 0.0)) throw InvalidArgument(kModule, "pi_n needs sigma > 0");
  if (!(n >= 1.0)) throw InvalidArgument(kModule, "pi_n needs n >= 1");
  if (!(m.r >= 1.0)) throw InvalidArgument(kModule, "pi_n needs r >= 1");
  const double rt = std::min(m.r, 2.0);
  const double a = m.alpha, V = m.V, D = m.D, th = m.theta;
  const double g = gamma;
  const double lg = std::max(std::log(m.B / sigma), 0.0);
  auto lpow = [&](double e) { return V == 0.0 ? 1.0 : std::pow(lg, e); };
  const double ent = D * std::pow(th / sigma, a) * lpow(V);  // D (theta/sigma)^alpha log^V
  if (ent > n) throw InvalidArgument(kModule, "pi_n needs D (theta/sigma)^alpha log(B/sigma)^V <= n");

  const double mid_edge = rt * (1.0 + 1.0 / g);
  PiBreakdown out{};
  // Terms shared by the first two cases.
  const double t1 = std::pow(sigma, rt / 2.0) * std::pow(ent, g / (2.0 * (g + 1.0))) *
                    std::pow(n, 1.0 / (2.0 * (1.0 + g)));
  const double t2 = std::pow(n, 0.5 - g / (1.0 + g)) * std::pow(ent, g / (1.0 + g));
  if (a == rt || a == mid_edge)
    throw BoundaryError(kModule, "alpha sits on a case boundary of the localized complexity");
  if (a < rt) {
    out.which = PiCase::small_alpha;
    out.terms = {t1, t2};
  } else if (a < mid_edge) {
    const double k = a + 2.0 - rt;
    if (sigma < std::pow(n, -1.0 / k)) throw ScaleError(kModule, "sigma below n^{-1/(alpha + 2 - r)}");
    out.which = PiCase::middle_alpha;
    const double t3 = std::pow(D * std::pow(th, a) * std::pow(n, (rt - a) / 2.0), -1.0 / k) * lpow(V / 2.0);
    out.terms = {t1, t2, t3};
  } else {
    const double w = 2.0 - rt;
    const double k = a * g + w * (g + 1.0);
    if (sigma < std::pow(n, -1.0 / (a + w * (1.0 + 1.0 / g))))
      throw ScaleError(kModule, "sigma below the admissible scale of the large-alpha case");
    out.which = PiCase::large_alpha;
    const double dth = D * std::pow(th, a);
    const double u1 = std::pow(n, (g * (a - rt) + w) / (2.0 * k)) * std::pow(dth, g / k) *
                      lpow(V * g / (2.0 * (g + 1.0)));
    const double u2 = t2;
    const double u3 = t1;
    const double u4 = std::pow(n, g * (a - rt) / (2.0 * k)) * std::pow(dth, (2.0 * g + w) / (2.0 * k)) *
                      lpow(V / 2.0);
    out.terms = {u1, u2, u3, u4};
  }
  std::vector<double> ts = out.terms;
  out.value = pairwise_sum(ts);
  return out;
}

inline double pi_n(const classes::EntropyModel& m, double gamma, double sigma, double n) {
  return pi_n_terms(m, gamma, sigma, n).value;
}

struct DeltaSolution {
  double delta;
  int grid_index;
};

// Smallest delta in (0, upper] with pi_fn(delta) <= sqrt(n) delta^2. The map
// delta -> pi_fn(delta)/delta^t must be non-increasing; this is audited on the
// search grid. Evaluations that throw ScaleError count as "not yet crossed".
inline DeltaSolution solve_delta_n(const std::function<double(double)>& pi_fn, double n, double t,
                                   double upper = 1.0, double lower = 1e-12, int per_decade = 64,
                                   bool audit = true) {
  if (!(t > 0.0 && t < 2.0)) throw InvalidArgument(kModule, "solve_delta_n needs t in (0, 2)");
  if (!(n >= 1.0)) throw InvalidArgument(kModule, "solve_delta_n needs n >= 1");
  if (!(upper > lower && lower > 0.0)) throw InvalidArgument(kModule, "solve_delta_n needs 0 < lower < upper");
  const double sn = std::sqrt(n);
  const auto grid = log_grid(lower, upper, per_decade);
  std::vector<double> vals(grid.size(), std::nan(""));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      vals[i] = pi_fn(grid[i]);
    } catch (const ScaleError&) {
    }
  }
  // Monotonicity audit of pi/delta^t over the evaluable points.
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; audit && i < grid.size(); ++i) {
    if (std::isnan(vals[i])) continue;
    const double ratio = vals[i] / std::pow(grid[i], t);
    if (ratio > prev * (1.0 + 1e-9))
      throw InvalidArgument(kModule, "pi(delta)/delta^t is not non-increasing on the grid");
    prev = ratio;
  }
  auto crossed = [&](double d, double v) { return !std::isnan(v) && v <= sn * d * d; };
  std::size_t first = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (crossed(grid[i], vals[i])) {
      first = i;
      break;
    }
  if (first == grid.size()) throw NumericalError(kModule, "no crossing pi(delta) <= sqrt(n) delta^2 in (0, upper]");
  if (first == 0) return {grid[0], 0};
  auto pred = [&](double d) {
    try {
      return crossed(d, pi_fn(d));
    } catch (const ScaleError&) {
      return false;
    }
  };
  const double d = bisect_first_true(grid[first - 1], grid[first], pred, 1e-6);
  return {d, static_cast<int>(first)};
}

}  // namespace mixlab::rates
