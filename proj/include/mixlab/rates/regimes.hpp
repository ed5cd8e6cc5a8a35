#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mixlab/core/rational.hpp"
#include "mixlab/rates/orlicz.hpp"

namespace mixlab::rates {

enum class Regime { iid_like, dependence_dominated, donsker_bounded, boundary };

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::iid_like: return "iid_like";
    case Regime::dependence_dominated: return "dependence_dominated";
    case Regime::donsker_bounded: return "donsker_bounded";
    case Regime::boundary: return "boundary";
  }
  return "?";
}

// One summand n^{n_exp} sigma^{sigma_exp} of a bound written as a maximum of terms.
template <typename T>
struct RateTerm {
  T n_exp;
  T sigma_exp;
};

template <typename T>
struct RegimeReport {
  Regime regime = Regime::boundary;
  std::optional<T> exponent;  // absent exactly on boundaries
  std::string source;         // "lr_bracketing" or "sup_norm_bracketing"
  std::vector<RateTerm<T>> terms;  // sigma-resolved form, max over terms
};

enum class SigmaMode { unit, free };

// Exponent of n in E sup |G_n| for entropy exponent alpha and polynomial
// beta-mixing decay beta_q <~ q^{-beta}. r = nullopt means sup-norm bracketing.
// With SigmaMode::free the report also lists the sigma-resolved terms; the
// exponent is the unit-sigma value.
template <typename T>
RegimeReport<T> rate_exponent(const T& alpha, const T& beta, const std::optional<T>& r,
                              SigmaMode mode = SigmaMode::unit) {
  const T zero(0), one(1), two(2);
  const T half = one / two;
  if (alpha < zero) throw InvalidArgument(kModule, "rate_exponent needs alpha >= 0");
  if (!(beta > zero)) throw InvalidArgument(kModule, "rate_exponent needs a positive decay exponent");
  if (r && !(*r > two)) throw InvalidArgument(kModule, "rate_exponent needs r > 2");

  RegimeReport<T> rep;
  rep.source = r ? "lr_bracketing" : "sup_norm_bracketing";
  auto iid_exp = [&] { return half - one / alpha; };
  const T second_n = (one - beta) / (two * (one + beta));  // n-power of the block-count term

  if (!r) {
    if (beta == one) return rep;
    if (beta > one) {
      if (alpha == two) return rep;
      if (alpha < two) {
        rep.regime = Regime::donsker_bounded;
        rep.exponent = zero;
        rep.terms = {{second_n, one}, {zero, one - alpha / two}};
      } else {
        rep.regime = Regime::iid_like;
        rep.exponent = iid_exp();
        rep.terms = {{iid_exp(), zero}};
      }
    } else {
      const T curve = (one + beta) / beta;
      if (alpha == curve) return rep;
      if (alpha < curve) {
        rep.regime = Regime::dependence_dominated;
        rep.exponent = second_n;
        rep.terms = {{second_n, one - alpha * beta / (one + beta)}};
      } else {
        rep.regime = Regime::iid_like;
        rep.exponent = iid_exp();
        rep.terms = {{iid_exp(), zero}};
      }
    }
  } else {
    const T rr = *r;
    const T threshold = rr / (rr - two);
    const T dep_term = {second_n};
    const T dep_sigma = zero - alpha * beta / (one + beta);
    if (beta == threshold) return rep;
    if (beta > threshold) {
      if (alpha == two) return rep;
      if (alpha < two) {
        rep.regime = Regime::donsker_bounded;
        rep.exponent = zero;
        rep.terms = {{zero, one - alpha / two}, {dep_term, dep_sigma}};
      } else {
        rep.regime = Regime::iid_like;
        rep.exponent = iid_exp();
        rep.terms = {{iid_exp(), zero}, {dep_term, dep_sigma}};
      }
    } else {
      const T curve = rr * (one + beta) / (beta * (rr - one));
      if (alpha == curve) return rep;
      if (alpha < curve) {
        const T e = (one - beta * (one - two / rr)) / (two * (one + beta));
        rep.regime = Regime::dependence_dominated;
        rep.exponent = e;
        rep.terms = {{e, one - alpha * (rr - one) * beta / (rr * (one + beta))}, {dep_term, dep_sigma}};
      } else {
        rep.regime = Regime::iid_like;
        rep.exponent = iid_exp();
        rep.terms = {{iid_exp(), zero}, {dep_term, dep_sigma}};
      }
    }
  }
  if (mode == SigmaMode::unit) rep.terms.clear();
  return rep;
}

// Value of a sigma-resolved report: max over terms of n^a sigma^b.
template <typename T>
double evaluate_terms(const RegimeReport<T>& rep, double sigma, double n) {
  double best = 0.0;
  for (const auto& t : rep.terms)
    best = std::max(best, std::pow(n, to_double(t.n_exp)) * std::pow(sigma, to_double(t.sigma_exp)));
  return best;
}

enum class ScaleStatus { admissible, near_limit, inadmissible };

inline std::string to_string(ScaleStatus s) {
  switch (s) {
    case ScaleStatus::admissible: return "admissible";
    case ScaleStatus::near_limit: return "near_limit";
    case ScaleStatus::inadmissible: return "inadmissible";
  }
  return "?";
}

// The sigma-resolved bounds hold for sigma >= n^{-1/alpha}; inputs within a
// factor 2 of that scale are flagged.
inline ScaleStatus sigma_admissibility(double alpha, double sigma, double n) {
  if (alpha <= 0.0) return ScaleStatus::admissible;
  const double limit = std::pow(n, -1.0 / alpha);
  if (sigma < limit) return ScaleStatus::inadmissible;
  if (sigma < 2.0 * limit) return ScaleStatus::near_limit;
  return ScaleStatus::admissible;
}

struct PhaseCell {
  double beta;
  double alpha;
  RegimeReport<double> report;
};

struct PhaseDiagram {
  std::vector<PhaseCell> cells;
  std::vector<std::pair<double, double>> curve;  // (beta, alpha) boundary polyline
  std::optional<double> r;
};

// Boundary alpha(beta): the dependence curve up to the decay threshold, then alpha = 2.
inline double phase_boundary_alpha(double beta, const std::optional<double>& r) {
  if (!r) return beta <= 1.0 ? (1.0 + beta) / beta : 2.0;
  const double thr = *r / (*r - 2.0);
  return beta <= thr ? *r * (1.0 + beta) / (beta * (*r - 1.0)) : 2.0;
}

inline PhaseDiagram phase_diagram(const std::vector<double>& beta_grid, const std::vector<double>& alpha_grid,
                                  const std::optional<double>& r, int curve_points = 200) {
  for (double b : beta_grid)
    if (!(b > 0.0)) throw InvalidArgument(kModule, "phase grid values must be positive");
  for (double a : alpha_grid)
    if (!(a > 0.0)) throw InvalidArgument(kModule, "phase grid values must be positive");
  if (beta_grid.empty() || alpha_grid.empty()) throw InvalidArgument(kModule, "phase grids must be nonempty");
  PhaseDiagram d;
  d.r = r;
  for (double b : beta_grid)
    for (double a : alpha_grid) d.cells.push_back({b, a, rate_exponent<double>(a, b, r)});
  const auto [bmin, bmax] = std::minmax_element(beta_grid.begin(), beta_grid.end());
  const double lo = std::log(*bmin), hi = std::log(*bmax);
  const double knee = r ? *r / (*r - 2.0) : 1.0;
  std::vector<double> bs;
  for (int i = 0; i < curve_points; ++i)
    bs.push_back(std::exp(curve_points == 1 ? lo : lo + (hi - lo) * i / (curve_points - 1)));
  if (knee > *bmin && knee < *bmax) bs.push_back(knee);
  std::sort(bs.begin(), bs.end());
  for (double b : bs) d.curve.emplace_back(b, phase_boundary_alpha(b, r));
  return d;
}

}  // namespace mixlab::rates
