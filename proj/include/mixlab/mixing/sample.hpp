#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mixlab/mixing/marginal.hpp"
#include "mixlab/mixing/profile.hpp"

namespace mixlab::mixing {

struct SequenceSample {
  std::vector<double> values;
  std::string generator_id;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::optional<MixingProfile> mixing_oracle;
  // Exact stationary marginal, when the generator knows it.
  std::optional<Marginal> marginal;

  std::size_t size() const { return values.size(); }
};

// Single-column CSV. The first line is a comment carrying the provenance.
inline std::string to_csv(const SequenceSample& s) {
  nlohmann::json prov{{"generator", s.generator_id}, {"params", s.params}, {"seed", s.seed}};
  std::ostringstream out;
  out << "# provenance " << prov.dump() << "\n";
  out << "value\n";
  out.precision(17);
  for (double v : s.values) out << v << "\n";
  return out.str();
}

}  // namespace mixlab::mixing
