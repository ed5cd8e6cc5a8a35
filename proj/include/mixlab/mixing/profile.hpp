#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "mixlab/core/error.hpp"
#include "mixlab/mixing/markov.hpp"

namespace mixlab::mixing {

enum class Flavor { beta, rho, gamma };

inline std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::beta: return "beta";
    case Flavor::rho: return "rho";
    case Flavor::gamma: return "gamma";
  }
  return "beta";
}

inline Flavor flavor_from_string(const std::string& s) {
  if (s == "beta") return Flavor::beta;
  if (s == "rho") return Flavor::rho;
  if (s == "gamma") return Flavor::gamma;
  throw InvalidArgument("mixing_dgp", "unknown mixing flavor '" + s + "'");
}

struct ExactMarkov {
  Matrix transition;
  Vector stationary;
};

// min(1, c (1+q)^(-exponent))
struct Polynomial {
  double c = 1.0;
  double exponent = 1.0;
};

// min(1, c exp(-rate q)); rate = +inf means the coefficient vanishes for q >= 1.
struct Exponential {
  double c = 1.0;
  double rate = 1.0;
};

// Explicit values for q = 0, 1, ...; the last value is held beyond the table.
struct Tabulated {
  std::vector<double> values;
};

class MixingProfile {
 public:
  using Kind = std::variant<ExactMarkov, Polynomial, Exponential, Tabulated>;

  MixingProfile(Kind kind, Flavor flavor = Flavor::beta) : kind_(std::move(kind)), flavor_(flavor) {
    validate();
  }

  static MixingProfile iid(Flavor flavor = Flavor::beta) {
    return MixingProfile(Tabulated{{1.0, 0.0}}, flavor);
  }
  static MixingProfile polynomial(double c, double exponent, Flavor flavor = Flavor::beta) {
    return MixingProfile(Polynomial{c, exponent}, flavor);
  }
  static MixingProfile exponential(double c, double rate, Flavor flavor = Flavor::beta) {
    return MixingProfile(Exponential{c, rate}, flavor);
  }
  static MixingProfile tabulated(std::vector<double> values, Flavor flavor = Flavor::beta) {
    return MixingProfile(Tabulated{std::move(values)}, flavor);
  }
  static MixingProfile exact_markov(Matrix p, Vector pi) {
    return MixingProfile(ExactMarkov{std::move(p), std::move(pi)}, Flavor::beta);
  }

  const Kind& kind() const { return kind_; }
  Flavor flavor() const { return flavor_; }

  double coefficient(std::int64_t q) const {
    if (q < 0) throw InvalidArgument("mixing_dgp", "lag q must be nonnegative");
    if (q == 0) return 1.0;
    return std::visit(
        [q](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          const double qd = static_cast<double>(q);
          if constexpr (std::is_same_v<T, ExactMarkov>) {
            return beta_from_power(matrix_power(k.transition, q), k.stationary);
          } else if constexpr (std::is_same_v<T, Polynomial>) {
            return std::min(1.0, k.c * std::pow(1.0 + qd, -k.exponent));
          } else if constexpr (std::is_same_v<T, Exponential>) {
            if (std::isinf(k.rate)) return 0.0;
            return std::min(1.0, k.c * std::exp(-k.rate * qd));
          } else {
            const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(q), k.values.size() - 1);
            return k.values[i];
          }
        },
        kind_);
  }

  // Coefficients for q = 0..q_max. Markov profiles use successive products
  // instead of one matrix power per lag.
  std::vector<double> coefficients(std::int64_t q_max) const {
    if (q_max < 0) throw InvalidArgument("mixing_dgp", "lag q must be nonnegative");
    if (const auto* m = std::get_if<ExactMarkov>(&kind_))
      return exact_beta_markov_sequence(m->transition, m->stationary, q_max);
    std::vector<double> out(static_cast<std::size_t>(q_max) + 1);
    for (std::int64_t q = 0; q <= q_max; ++q) out[static_cast<std::size_t>(q)] = coefficient(q);
    return out;
  }

  // Decay exponent of the polynomial family, if this profile has one.
  std::optional<double> polynomial_exponent() const {
    if (const auto* p = std::get_if<Polynomial>(&kind_)) return p->exponent;
    return std::nullopt;
  }

  std::string kind_name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, ExactMarkov>) return "exact_markov";
          else if constexpr (std::is_same_v<T, Polynomial>) return "polynomial";
          else if constexpr (std::is_same_v<T, Exponential>) return "exponential";
          else return "tabulated";
        },
        kind_);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["kind"] = kind_name();
    j["flavor"] = to_string(flavor_);
    std::visit(
        [&j](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, ExactMarkov>) {
            std::vector<std::vector<double>> rows;
            for (Eigen::Index i = 0; i < k.transition.rows(); ++i) {
              std::vector<double> row;
              for (Eigen::Index c = 0; c < k.transition.cols(); ++c) row.push_back(k.transition(i, c));
              rows.push_back(row);
            }
            j["transition"] = rows;
            j["stationary"] = std::vector<double>(k.stationary.data(),
                                                  k.stationary.data() + k.stationary.size());
          } else if constexpr (std::is_same_v<T, Polynomial>) {
            j["c"] = k.c;
            j["exponent"] = k.exponent;
          } else if constexpr (std::is_same_v<T, Exponential>) {
            j["c"] = k.c;
            j["rate"] = std::isinf(k.rate) ? nlohmann::json("inf") : nlohmann::json(k.rate);
          } else {
            j["values"] = k.values;
          }
        },
        kind_);
    return j;
  }

 private:
  void validate() const {
    std::visit(
        [](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, ExactMarkov>) {
            validate_transition(k.transition);
            validate_stationary(k.transition, k.stationary);
          } else if constexpr (std::is_same_v<T, Polynomial>) {
            mixlab::detail::require(k.c > 0.0 && k.exponent > 0.0, "mixing_dgp",
                            "polynomial profile needs c > 0 and exponent > 0");
          } else if constexpr (std::is_same_v<T, Exponential>) {
            mixlab::detail::require(k.c > 0.0 && k.rate > 0.0, "mixing_dgp",
                            "exponential profile needs c > 0 and rate > 0");
          } else {
            mixlab::detail::require(!k.values.empty(), "mixing_dgp", "tabulated profile is empty");
            mixlab::detail::require(k.values[0] == 1.0, "mixing_dgp",
                            "tabulated profile must start with coefficient 1");
            for (std::size_t i = 0; i < k.values.size(); ++i) {
              mixlab::detail::require(k.values[i] >= 0.0 && k.values[i] <= 1.0, "mixing_dgp",
                              "tabulated coefficients must lie in [0, 1]");
              if (i > 0)
                mixlab::detail::require(k.values[i] <= k.values[i - 1], "mixing_dgp",
                                "tabulated coefficients must be non-increasing");
            }
          }
        },
        kind_);
  }

  Kind kind_;
  Flavor flavor_;
};

}  // namespace mixlab::mixing
