#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>

#include "mixlab/rates/orlicz.hpp"

namespace mixlab::rates::apps {

// gamma = inf is allowed where noted and recovers the independent case.
struct Dnn { double s, d, gamma; };
struct Additive { double s, gamma, d_exponent; };  // d = n^{d_exponent}
struct ConvexWorst { double d, beta; };
struct ConvexAdapt { double d, gamma; };
struct Ot { double beta, d; };
struct Classification { double alpha, gamma; };

using App = std::variant<Dnn, Additive, ConvexWorst, ConvexAdapt, Ot, Classification>;

struct ExponentRecord {
  std::string app;
  double exponent;       // error ~ n^{-exponent}, up to log factors
  std::string quantity;  // which error the exponent refers to
  std::string regime;    // "" when the application has a single regime
};

namespace detail {
inline double inv(double g) { return std::isinf(g) ? 0.0 : 1.0 / g; }
inline void need(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(kModule, msg);
}
inline void not_boundary(bool ok, const std::string& msg) {
  if (!ok) throw BoundaryError(kModule, msg);
}
}  // namespace detail

inline ExponentRecord application_exponents(const App& app) {
  using detail::inv;
  using detail::need;
  using detail::not_boundary;
  return std::visit(
      [](const auto& a) -> ExponentRecord {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Dnn>) {
          need(a.s > 0 && a.d >= 1 && a.gamma > 0, "dnn needs s > 0, d >= 1, gamma > 0");
          return {"dnn", a.s / (a.d + 2.0 * a.s * (1.0 + inv(a.gamma))), "l2_error", ""};
        } else if constexpr (std::is_same_v<T, Additive>) {
          need(a.s > 0 && a.gamma > 0, "additive needs s > 0, gamma > 0");
          need(a.d_exponent >= 0 && a.d_exponent < 1, "additive needs dimension exponent in [0, 1)");
          const double e = (2.0 * a.s * (1.0 - a.d_exponent) - a.d_exponent) /
                           (2.0 * a.s * (1.0 + inv(a.gamma)) + 1.0);
          need(e > 0, "additive rate is not decaying for this dimension growth");
          return {"additive", e, "squared_l2_error", ""};
        } else if constexpr (std::is_same_v<T, ConvexWorst>) {
          need(a.d > 4, "convex_worst needs d > 4");
          const double thr = 2.0 / (a.d - 2.0);
          not_boundary(a.beta != thr, "convex_worst excludes beta = 2/(d-2)");
          need(a.beta > thr, "convex_worst needs beta > 2/(d-2)");
          not_boundary(a.beta != 1.0, "convex_worst excludes beta = 1");
          return {"convex_worst", 2.0 / a.d, "squared_l2_risk", ""};
        } else if constexpr (std::is_same_v<T, ConvexAdapt>) {
          need(a.d > 8, "convex_adapt needs d > 8");
          const double thr = 4.0 / (a.d - 4.0);
          not_boundary(a.gamma != thr, "convex_adapt excludes gamma = 4/(d-4)");
          need(a.gamma > thr, "convex_adapt needs gamma > 4/(d-4)");
          not_boundary(a.gamma != 1.0, "convex_adapt excludes gamma = 1");
          return {"convex_adapt", 4.0 / a.d, "squared_l2_error", ""};
        } else if constexpr (std::is_same_v<T, Ot>) {
          need(a.d >= 4 && a.beta > 0, "ot needs d >= 4 and beta > 0");
          const double thr = 2.0 / (a.d - 2.0);
          not_boundary(a.beta != thr, "ot excludes beta = 2/(d-2)");
          if (a.beta > thr) return {"ot", 2.0 / a.d, "w2_squared_error", "fast"};
          return {"ot", a.beta / (a.beta + 1.0), "w2_squared_error", "slow"};
        } else {
          need(a.gamma > 0, "classification needs gamma > 0");
          need(a.alpha > 1.0 + inv(a.gamma), "classification needs alpha > 1 + 1/gamma");
          return {"classification", 1.0 / (a.alpha + 1.0 + inv(a.gamma)), "excess_risk", ""};
        }
      },
      app);
}

struct OtSchedule {
  std::int64_t k;         // Sinkhorn iterations, rounded up
  double k_exact;         // n^{k exponent} before rounding
  double epsilon;
  double k_exponent;
  double eps_exponent;    // epsilon = n^{-eps_exponent}
  double runtime_exponent;
  std::string regime;     // "fast" or "slow"
};

inline OtSchedule ot_schedule(double beta, double d, double n) {
  if (!(d >= 4.0)) throw InvalidArgument(kModule, "ot_schedule needs d >= 4");
  if (!(beta > 0.0)) throw InvalidArgument(kModule, "ot_schedule needs beta > 0");
  if (!(n >= 1.0)) throw InvalidArgument(kModule, "ot_schedule needs n >= 1");
  const double thr = 2.0 / (d - 2.0);
  if (beta == thr) throw BoundaryError(kModule, "ot_schedule excludes beta = 2/(d-2)");
  OtSchedule s;
  if (beta > thr) {
    s.regime = "fast";
    s.k_exponent = 3.0 / d;
    s.eps_exponent = 1.0 / d;
  } else {
    s.regime = "slow";
    s.k_exponent = 3.0 * beta / (2.0 * (beta + 1.0));
    s.eps_exponent = beta / (2.0 * (beta + 1.0));
  }
  s.k_exact = std::pow(n, s.k_exponent);
  // Absorb floating noise before rounding up (10^{4*3/4} must give 1000).
  s.k = static_cast<std::int64_t>(std::ceil(s.k_exact * (1.0 - 1e-12)));
  s.epsilon = std::pow(n, -s.eps_exponent);
  s.runtime_exponent = 2.0 + s.k_exponent;
  return s;
}

}  // namespace mixlab::rates::apps
