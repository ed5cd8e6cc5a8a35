#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "mixlab/core/error.hpp"

namespace mixlab {

// Pairwise summation with a fixed split point (midpoint of the index range).
// The tree shape depends only on the length, so the result is independent
// of how the summands were produced.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// log(sum(exp(z))) with max shift.
inline double log_sum_exp(std::span<const double> z) {
  if (z.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(z.begin(), z.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : z) s += std::exp(x - m);
  return m + std::log(s);
}

// Smallest x in [lo, hi] with pred(x) true, assuming pred is monotone
// (false ... false true ... true). Returns hi if only hi satisfies it.
template <typename Pred>
double bisect_first_true(double lo, double hi, Pred pred, double rel_tol = 1e-12,
                         int max_iter = 400) {
  for (int it = 0; it < max_iter; ++it) {
    if (hi - lo <= rel_tol * std::max(std::abs(hi), std::abs(lo))) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// Adaptive Simpson quadrature in the log variable: integrates f over [a, b]
// (0 < a < b) via t = log u, du = u dt. Power-log integrands are smooth in t.
namespace detail {
template <typename F>
double log_simpson_rec(const F& g, double t0, double t1, double g0, double gm, double g1,
                       double whole, double tol, int depth) {
  const double tm = 0.5 * (t0 + t1);
  const double tl = 0.5 * (t0 + tm);
  const double tr = 0.5 * (tm + t1);
  const double gl = g(tl);
  const double gr = g(tr);
  const double left = (tm - t0) / 6.0 * (g0 + 4.0 * gl + gm);
  const double right = (t1 - tm) / 6.0 * (gm + 4.0 * gr + g1);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return log_simpson_rec(g, t0, tm, g0, gl, gm, left, 0.5 * tol, depth - 1) +
         log_simpson_rec(g, tm, t1, gm, gr, g1, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <typename F>
double integrate_log(const F& f, double a, double b, double rel_tol = 1e-6) {
  if (!(a > 0.0) || !(b > a)) {
    if (a == b) return 0.0;
    throw InvalidArgument("numeric", "integrate_log needs 0 < a <= b");
  }
  auto g = [&](double t) {
    const double u = std::exp(t);
    return f(u) * u;
  };
  const double t0 = std::log(a), t1 = std::log(b);
  // Coarse pass to scale the absolute tolerance.
  const int pieces = std::max(1, static_cast<int>(std::ceil((t1 - t0) / 0.5)));
  const double h = (t1 - t0) / pieces;
  std::vector<double> parts;
  parts.reserve(pieces);
  double rough = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double s0 = t0 + i * h, s1 = s0 + h;
    rough += h / 6.0 * (g(s0) + 4.0 * g(0.5 * (s0 + s1)) + g(s1));
  }
  const double tol = rel_tol * std::max(std::abs(rough), 1e-300);
  for (int i = 0; i < pieces; ++i) {
    const double s0 = t0 + i * h, s1 = s0 + h, sm = 0.5 * (s0 + s1);
    const double g0 = g(s0), gm = g(sm), g1 = g(s1);
    const double whole = h / 6.0 * (g0 + 4.0 * gm + g1);
    parts.push_back(detail::log_simpson_rec(g, s0, s1, g0, gm, g1, whole,
                                            tol / pieces, 40));
  }
  return pairwise_sum(parts);
}

// Geometric grid from lo to hi (inclusive) with the given density per decade.
inline std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi >= lo))
    throw InvalidArgument("numeric", "log_grid needs 0 < lo <= hi");
  const double decades = std::log10(hi / lo);
  const int steps = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
  std::vector<double> g(steps + 1);
  for (int i = 0; i <= steps; ++i)
    g[i] = lo * std::pow(10.0, decades * static_cast<double>(i) / steps);
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace mixlab
