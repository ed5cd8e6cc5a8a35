#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixlab/classes/sup_oracles.hpp"
#include "mixlab/mixing/sample.hpp"

namespace mixlab::empirical {

inline constexpr const char* kModule = "empirical_process";

enum class Statistic { ks, monotone, w1 };

inline std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::ks: return "ks";
    case Statistic::monotone: return "monotone";
    case Statistic::w1: return "w1";
  }
  return "?";
}

inline Statistic statistic_from_string(const std::string& s) {
  if (s == "ks") return Statistic::ks;
  if (s == "monotone") return Statistic::monotone;
  if (s == "w1") return Statistic::w1;
  throw InvalidArgument(kModule, "unknown statistic '" + s + "'");
}

// sup |G_n f| over the class attached to the statistic, computed exactly.
inline double gn_stat(const std::vector<double>& values, Statistic stat,
                      const std::optional<mixing::Marginal>& cdf) {
  if (!cdf) throw InvalidArgument(kModule, "statistic needs the exact marginal cdf of the sample");
  switch (stat) {
    case Statistic::ks: return classes::sup_halflines(values, *cdf);
    case Statistic::monotone: return classes::sup_monotone01(values, *cdf);
    case Statistic::w1: return classes::sup_lipschitz_w1(values, *cdf);
  }
  return 0.0;
}

inline double gn_stat(const mixing::SequenceSample& s, Statistic stat) {
  return gn_stat(s.values, stat, s.marginal);
}

}  // namespace mixlab::empirical
