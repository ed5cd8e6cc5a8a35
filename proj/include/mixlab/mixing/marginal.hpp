#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "mixlab/core/error.hpp"

namespace mixlab::mixing {

// Stationary marginal laws with exact CDF access. These are the "cdf
// oracles" the supremum statistics are measured against.
struct UniformLaw {
  double lo = 0.0;
  double hi = 1.0;
};

struct NormalLaw {
  double mean = 0.0;
  double sd = 1.0;
};

// Finite-support law; atoms strictly increasing.
struct DiscreteLaw {
  std::vector<double> atoms;
  std::vector<double> probs;
};

namespace detail {

inline double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
inline double std_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

// Acklam's rational approximation polished by two Newton steps.
inline double std_normal_quantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    const double pdf = std_normal_pdf(x);
    if (pdf <= 0.0) break;
    x -= (std_normal_cdf(x) - p) / pdf;
  }
  return x;
}

}  // namespace detail

// Visitor-style wrapper; value semantics, cheap to copy except for
// large discrete supports.
class Marginal {
 public:
  using Law = std::variant<UniformLaw, NormalLaw, DiscreteLaw>;

  Marginal(UniformLaw u) : law_(u) {  // NOLINT
    detail_require(u.hi > u.lo, "uniform law needs hi > lo");
  }
  Marginal(NormalLaw n) : law_(n) {  // NOLINT
    detail_require(n.sd > 0.0, "normal law needs sd > 0");
  }
  Marginal(DiscreteLaw d) : law_(std::move(d)) {  // NOLINT
    const auto& dl = std::get<DiscreteLaw>(law_);
    detail_require(!dl.atoms.empty() && dl.atoms.size() == dl.probs.size(),
                   "discrete law needs matching nonempty atoms/probs");
    double total = 0.0;
    for (std::size_t i = 0; i < dl.atoms.size(); ++i) {
      detail_require(dl.probs[i] >= 0.0, "discrete law has a negative probability");
      if (i > 0) detail_require(dl.atoms[i] > dl.atoms[i - 1], "discrete atoms must increase");
      total += dl.probs[i];
    }
    detail_require(std::abs(total - 1.0) < 1e-9, "discrete probabilities must sum to 1");
  }

  // Builds a discrete law from unsorted, possibly repeated atoms.
  static Marginal discrete(const std::vector<double>& values, const std::vector<double>& weights) {
    std::vector<std::pair<double, double>> vw;
    for (std::size_t i = 0; i < values.size(); ++i) vw.emplace_back(values[i], weights[i]);
    std::sort(vw.begin(), vw.end());
    DiscreteLaw d;
    for (const auto& [v, w] : vw) {
      if (!d.atoms.empty() && d.atoms.back() == v) {
        d.probs.back() += w;
      } else {
        d.atoms.push_back(v);
        d.probs.push_back(w);
      }
    }
    return Marginal(std::move(d));
  }

  const Law& law() const { return law_; }

  // F(x) = P(X <= x).
  double cdf(double x) const {
    return std::visit(
        [x](const auto& l) -> double {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, UniformLaw>) {
            return std::clamp((x - l.lo) / (l.hi - l.lo), 0.0, 1.0);
          } else if constexpr (std::is_same_v<T, NormalLaw>) {
            return detail::std_normal_cdf((x - l.mean) / l.sd);
          } else {
            double s = 0.0;
            for (std::size_t i = 0; i < l.atoms.size() && l.atoms[i] <= x; ++i) s += l.probs[i];
            return std::min(s, 1.0);
          }
        },
        law_);
  }

  // F(x-) = P(X < x).
  double cdf_left(double x) const {
    if (const auto* d = std::get_if<DiscreteLaw>(&law_)) {
      double s = 0.0;
      for (std::size_t i = 0; i < d->atoms.size() && d->atoms[i] < x; ++i) s += d->probs[i];
      return std::min(s, 1.0);
    }
    return cdf(x);
  }

  double mean() const {
    return std::visit(
        [](const auto& l) -> double {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, UniformLaw>) {
            return 0.5 * (l.lo + l.hi);
          } else if constexpr (std::is_same_v<T, NormalLaw>) {
            return l.mean;
          } else {
            double s = 0.0;
            for (std::size_t i = 0; i < l.atoms.size(); ++i) s += l.atoms[i] * l.probs[i];
            return s;
          }
        },
        law_);
  }

  // inf{x : F(x) >= p}.
  double quantile(double p) const {
    return std::visit(
        [p](const auto& l) -> double {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, UniformLaw>) {
            return l.lo + std::clamp(p, 0.0, 1.0) * (l.hi - l.lo);
          } else if constexpr (std::is_same_v<T, NormalLaw>) {
            return l.mean + l.sd * detail::std_normal_quantile(p);
          } else {
            double s = 0.0;
            for (std::size_t i = 0; i < l.atoms.size(); ++i) {
              s += l.probs[i];
              if (s >= p - 1e-15) return l.atoms[i];
            }
            return l.atoms.back();
          }
        },
        law_);
  }

  // G(x) = integral of F over (-inf, x].
  double integrated_cdf(double x) const {
    return std::visit(
        [x](const auto& l) -> double {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, UniformLaw>) {
            const double w = l.hi - l.lo;
            if (x <= l.lo) return 0.0;
            if (x >= l.hi) return 0.5 * w + (x - l.hi);
            return 0.5 * (x - l.lo) * (x - l.lo) / w;
          } else if constexpr (std::is_same_v<T, NormalLaw>) {
            const double z = (x - l.mean) / l.sd;
            return (x - l.mean) * detail::std_normal_cdf(z) + l.sd * detail::std_normal_pdf(z);
          } else {
            double s = 0.0;
            for (std::size_t i = 0; i < l.atoms.size() && l.atoms[i] <= x; ++i)
              s += l.probs[i] * (x - l.atoms[i]);
            return s;
          }
        },
        law_);
  }

  // Integral of (1 - F) over [x, inf).
  double integrated_survival(double x) const { return integrated_cdf(x) - x + mean(); }

  // Integral of |c - F(x)| over [a, b] for a constant level c in [0, 1];
  // a may be -inf when c == 0, b may be +inf when c == 1.
  double integral_abs_diff(double c, double a, double b) const {
    if (!(b > a)) return 0.0;
    const bool left_open = std::isinf(a);
    const bool right_open = std::isinf(b);
    if (left_open && c != 0.0)
      throw InvalidArgument("marginal", "left tail integral needs level 0");
    if (right_open && c != 1.0)
      throw InvalidArgument("marginal", "right tail integral needs level 1");
    if (left_open && right_open)
      throw InvalidArgument("marginal", "doubly infinite interval");
    if (left_open) return integrated_cdf(b);
    if (right_open) return integrated_survival(a);
    const double m = std::clamp(quantile(c), a, b);
    const double below = c * (m - a) - (integrated_cdf(m) - integrated_cdf(a));
    const double above = (integrated_cdf(b) - integrated_cdf(m)) - c * (b - m);
    return std::max(0.0, below) + std::max(0.0, above);
  }

  std::string name() const {
    return std::visit(
        [](const auto& l) -> std::string {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, UniformLaw>) return "uniform";
          else if constexpr (std::is_same_v<T, NormalLaw>) return "normal";
          else return "discrete";
        },
        law_);
  }

 private:
  static void detail_require(bool ok, const char* msg) {
    if (!ok) throw InvalidArgument("marginal", msg);
  }

  Law law_;
};

}  // namespace mixlab::mixing
