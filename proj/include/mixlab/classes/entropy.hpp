#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mixlab/core/error.hpp"

namespace mixlab::classes {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// H(u) = K D (theta/u)^alpha (log(B/u))^V on 0 < u <= sigma.
// r is the bracketing norm index: r in (2, inf] for beta-mixing bounds,
// r in [1, 2] for the gamma-mixing (localized) bounds.
struct EntropyModel {
  double K = 1.0;
  double D = 1.0;
  double theta = 1.0;
  double B = std::exp(1.0);
  double alpha = 1.0;
  double V = 0.0;
  double r = kInf;
  double sigma = 1.0;
  double b = 1.0;

  void validate() const {
    auto req = [](bool ok, const char* msg) {
      if (!ok) throw InvalidArgument("function_classes", msg);
    };
    req(K > 0.0, "entropy model needs K > 0");
    req(D >= 1.0, "entropy model needs D >= 1");
    req(sigma > 0.0, "entropy model needs sigma > 0");
    req(b >= 1.0, "entropy model needs b >= 1");
    req(sigma <= b, "entropy model needs sigma <= b");
    req(theta >= sigma, "entropy model needs theta >= sigma");
    req(B >= std::max({sigma, b, std::exp(1.0)}), "entropy model needs B >= max(sigma, b, e)");
    req(alpha >= 0.0, "entropy model needs alpha >= 0");
    req(V >= 0.0, "entropy model needs V >= 0");
    req(r >= 1.0, "entropy model needs r >= 1");
  }

  // Formula value without the domain check; used by composite bounds.
  double raw(double u) const {
    double h = K * D;
    if (alpha != 0.0) h *= std::pow(theta / u, alpha);
    if (V != 0.0) h *= std::pow(std::max(0.0, std::log(B / u)), V);
    return h;
  }
};

inline double entropy_eval(const EntropyModel& m, double u) {
  if (!(u > 0.0)) throw InvalidArgument("function_classes", "entropy scale u must be > 0");
  if (u > m.sigma * (1.0 + 1e-12))
    throw InvalidArgument("function_classes", "entropy scale u must not exceed sigma");
  return m.raw(u);
}

// Sum of power-log terms; the result of applying the bracketing calculus.
// The bound is H(u) = sum_i H_i(u) over the common radius sigma.
class EntropyBound {
 public:
  EntropyBound(const EntropyModel& m) : terms_{m}, sigma_(m.sigma), b_(m.b) {}  // NOLINT

  double operator()(double u) const {
    if (!(u > 0.0)) throw InvalidArgument("function_classes", "entropy scale u must be > 0");
    if (u > sigma_ * (1.0 + 1e-12))
      throw InvalidArgument("function_classes", "entropy scale u must not exceed sigma");
    double s = 0.0;
    for (const auto& t : terms_) s += t.raw(u);
    return s;
  }

  const std::vector<EntropyModel>& terms() const { return terms_; }
  double sigma() const { return sigma_; }
  double b() const { return b_; }
  bool is_single() const { return terms_.size() == 1; }
  const EntropyModel& single() const {
    if (!is_single()) throw InvalidArgument("function_classes", "entropy bound has several terms");
    return terms_.front();
  }

  // H(delta) -> H(delta / s): the class is stretched by s in sup norm.
  EntropyBound rescaled(double s) const {
    EntropyBound out = *this;
    for (auto& t : out.terms_) {
      t.theta *= s;
      t.B *= s;
      t.sigma *= s;
      t.b *= s;
    }
    out.sigma_ *= s;
    out.b_ *= s;
    return out;
  }

  EntropyBound plus(const EntropyBound& other) const {
    EntropyBound a = rescaled(2.0), c = other.rescaled(2.0);
    EntropyBound out = a;
    out.terms_.insert(out.terms_.end(), c.terms_.begin(), c.terms_.end());
    out.sigma_ = sigma_ + other.sigma_;
    out.b_ = b_ + other.b_;
    return out;
  }

 private:
  std::vector<EntropyModel> terms_;
  double sigma_;
  double b_;
};

struct LipschitzCompose { double L; };
struct Sum { EntropyBound other; };
struct ScalarMultiply { double g_sup; };
struct PositivePart {};
using Transform = std::variant<LipschitzCompose, Sum, ScalarMultiply, PositivePart>;

// Bracketing calculus: composition with a monotone L-Lipschitz map gives
// H(delta/L); a sum of two classes gives H1(delta/2) + H2(delta/2);
// multiplication by a function bounded by g_sup gives H(delta/g_sup);
// taking positive parts leaves the bound unchanged.
inline EntropyBound entropy_calculus(const EntropyBound& h, const Transform& t) {
  return std::visit(
      [&h](const auto& tr) -> EntropyBound {
        using T = std::decay_t<decltype(tr)>;
        if constexpr (std::is_same_v<T, LipschitzCompose>) {
          if (!(tr.L > 0.0)) throw InvalidArgument("function_classes", "Lipschitz constant must be > 0");
          return h.rescaled(tr.L);
        } else if constexpr (std::is_same_v<T, Sum>) {
          return h.plus(tr.other);
        } else if constexpr (std::is_same_v<T, ScalarMultiply>) {
          if (!(tr.g_sup > 0.0)) throw InvalidArgument("function_classes", "multiplier bound must be > 0");
          return h.rescaled(tr.g_sup);
        } else {
          return h;
        }
      },
      t);
}

inline nlohmann::json to_json(const EntropyModel& m) {
  auto num = [](double x) { return std::isinf(x) ? nlohmann::json("inf") : nlohmann::json(x); };
  return {{"K", m.K}, {"D", m.D}, {"theta", m.theta}, {"B", m.B}, {"alpha", m.alpha},
          {"V", m.V}, {"r", num(m.r)}, {"sigma", m.sigma}, {"b", m.b}};
}

// Reads {K, D, theta, B, alpha, V, r, sigma, b}; omitted keys keep their
// defaults, unknown keys are rejected. r may be the string "inf".
inline EntropyModel entropy_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("function_classes", "entropy block must be an object");
  static const std::vector<std::string> keys{"K", "D", "theta", "B", "alpha", "V", "r", "sigma", "b"};
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw ConfigError("function_classes", "unknown key '" + k + "' in entropy block");
  EntropyModel m;
  auto read = [&j](const char* key, double& dst) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (v.is_string() && v.get<std::string>() == "inf") {
      dst = kInf;
    } else if (v.is_number()) {
      dst = v.get<double>();
    } else {
      throw ConfigError("function_classes", std::string("entropy field '") + key + "' must be a number");
    }
  };
  read("K", m.K);
  read("D", m.D);
  read("theta", m.theta);
  read("B", m.B);
  read("alpha", m.alpha);
  read("V", m.V);
  read("r", m.r);
  read("sigma", m.sigma);
  read("b", m.b);
  m.validate();
  return m;
}

}  // namespace mixlab::classes
