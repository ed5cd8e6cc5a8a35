#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mixlab/core/error.hpp"
#include "mixlab/core/numeric.hpp"
#include "mixlab/mixing/marginal.hpp"

namespace mixlab::classes {

using mixing::Marginal;

namespace detail {

struct Atom {
  double x;
  std::size_t below;     // observations strictly less than x
  std::size_t at_most;   // observations less than or equal to x
};

inline std::vector<Atom> empirical_atoms(std::vector<double> xs) {
  if (xs.empty()) throw InvalidArgument("function_classes", "supremum oracle needs a nonempty sample");
  std::sort(xs.begin(), xs.end());
  std::vector<Atom> atoms;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    atoms.push_back({xs[i], i, j});
    i = j;
  }
  return atoms;
}

}  // namespace detail

// sqrt(n) sup_x |F_n(x) - F(x)|. Between jumps both functions are monotone,
// so the supremum is attained at a one-sided limit at some sample point.
inline double sup_halflines(const std::vector<double>& sample, const Marginal& cdf) {
  const auto atoms = detail::empirical_atoms(sample);
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (const auto& a : atoms) {
    const double fn_left = static_cast<double>(a.below) / n;
    const double fn_right = static_cast<double>(a.at_most) / n;
    d = std::max({d, std::abs(fn_right - cdf.cdf(a.x)), std::abs(fn_left - cdf.cdf_left(a.x))});
  }
  return std::sqrt(n) * d;
}

// sqrt(n) sup over non-decreasing f: R -> [0, 1] of |(P_n - P) f|. The
// extreme points of that class are indicators of upper sets [t, inf) and
// (t, inf), and a linear functional peaks at an extreme point.
inline double sup_monotone01(const std::vector<double>& sample, const Marginal& cdf) {
  const auto atoms = detail::empirical_atoms(sample);
  const auto count = sample.size();
  const double n = static_cast<double>(count);
  double up = 0.0, down = 0.0;
  for (const auto& a : atoms) {
    // [t, inf)
    const double pn_closed = static_cast<double>(count - a.below) / n;
    const double p_closed = 1.0 - cdf.cdf_left(a.x);
    // (t, inf)
    const double pn_open = static_cast<double>(count - a.at_most) / n;
    const double p_open = 1.0 - cdf.cdf(a.x);
    up = std::max({up, pn_closed - p_closed, pn_open - p_open});
    down = std::max({down, p_closed - pn_closed, p_open - pn_open});
  }
  return std::sqrt(n) * std::max(up, down);
}

// sqrt(n) * integral |F_n - F|: by Kantorovich-Rubinstein duality, the
// supremum of |G_n f| over 1-Lipschitz f on the line.
inline double sup_lipschitz_w1(const std::vector<double>& sample, const Marginal& cdf) {
  const auto atoms = detail::empirical_atoms(sample);
  const double n = static_cast<double>(sample.size());
  std::vector<double> pieces;
  pieces.reserve(atoms.size() + 1);
  pieces.push_back(cdf.integral_abs_diff(0.0, -std::numeric_limits<double>::infinity(), atoms.front().x));
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
    const double level = static_cast<double>(atoms[i].at_most) / n;
    pieces.push_back(cdf.integral_abs_diff(level, atoms[i].x, atoms[i + 1].x));
  }
  pieces.push_back(cdf.integral_abs_diff(1.0, atoms.back().x, std::numeric_limits<double>::infinity()));
  return std::sqrt(n) * pairwise_sum(pieces);
}

}  // namespace mixlab::classes
