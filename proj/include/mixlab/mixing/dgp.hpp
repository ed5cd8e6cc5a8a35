#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "mixlab/core/error.hpp"
#include "mixlab/mixing/generators.hpp"

namespace mixlab::mixing {

// A data-generating process built once from its JSON block
// {generator, params, seed}; expensive tables are shared by every draw.
class Dgp {
 public:
  static Dgp from_json(const nlohmann::json& cfg) {
    using nlohmann::json;
    if (!cfg.is_object()) throw ConfigError("mixing_dgp", "dgp block must be an object");
    check_keys(cfg, {"generator", "params", "seed"}, "dgp");
    if (!cfg.contains("generator") || !cfg["generator"].is_string())
      throw ConfigError("mixing_dgp", "dgp.generator must be a string");
    Dgp d;
    d.id_ = cfg["generator"].get<std::string>();
    d.params_ = cfg.value("params", json::object());
    if (!d.params_.is_object()) throw ConfigError("mixing_dgp", "dgp.params must be an object");
    if (cfg.contains("seed")) {
      if (!cfg["seed"].is_number_unsigned() && !cfg["seed"].is_number_integer())
        throw ConfigError("mixing_dgp", "dgp.seed must be a nonnegative integer");
      d.seed_ = cfg["seed"].get<std::uint64_t>();
    }
    const json& p = d.params_;
    try {
      if (d.id_ == "markov") {
        check_keys(p, {"transition", "state_values"}, "dgp.params");
        auto rows = p.at("transition").get<std::vector<std::vector<double>>>();
        const auto m = static_cast<Eigen::Index>(rows.size());
        Matrix t(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
          if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != m)
            throw ConfigError("mixing_dgp", "dgp.params.transition must be square");
          for (Eigen::Index j = 0; j < m; ++j) t(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        d.transition_ = t;
        if (p.contains("state_values")) {
          d.state_values_ = p["state_values"].get<std::vector<double>>();
        } else {
          for (Eigen::Index i = 0; i < m; ++i) d.state_values_.push_back(static_cast<double>(i));
        }
      } else if (d.id_ == "renewal") {
        check_keys(p, {"beta", "L_max", "levels"}, "dgp.params");
        d.levels_ = p.value("levels", 0);
        d.renewal_ = std::make_shared<RenewalLaw>(p.at("beta").get<double>(),
                                                  p.at("L_max").get<std::int64_t>());
      } else if (d.id_ == "ar1") {
        check_keys(p, {"a"}, "dgp.params");
        d.a_ = p.at("a").get<double>();
        if (!(std::abs(d.a_) < 1.0))
          throw InvalidArgument("mixing_dgp", "AR(1) coefficient must satisfy |a| < 1");
      } else if (d.id_ == "iid_uniform") {
        check_keys(p, {}, "dgp.params");
      } else if (d.id_ == "constant") {
        check_keys(p, {"value"}, "dgp.params");
        d.value_ = p.value("value", 0.5);
      } else {
        throw ConfigError("mixing_dgp", "unknown generator '" + d.id_ + "'");
      }
    } catch (const json::exception& e) {
      throw ConfigError("mixing_dgp", std::string("bad dgp params: ") + e.what());
    }
    return d;
  }

  SequenceSample generate(std::int64_t n, std::uint64_t seed) const {
    if (id_ == "markov") return gen_finite_markov(transition_, state_values_, n, seed);
    if (id_ == "renewal") return gen_renewal_chain(*renewal_, n, seed, levels_);
    if (id_ == "ar1") return gen_ar1(a_, n, seed);
    if (id_ == "iid_uniform") return gen_iid_uniform(n, seed);
    return gen_constant(value_, n, seed);
  }
  SequenceSample generate(std::int64_t n) const { return generate(n, seed_); }

  const std::string& id() const { return id_; }
  const nlohmann::json& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }
  const RenewalLaw* renewal_law() const { return renewal_.get(); }
  int levels() const { return levels_; }

  nlohmann::json to_json() const {
    return {{"generator", id_}, {"params", params_}, {"seed", seed_}};
  }

  static void check_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    if (!obj.is_object()) throw ConfigError("mixing_dgp", where + " must be an object");
    for (const auto& [k, v] : obj.items())
      if (!allowed.count(k)) throw ConfigError("mixing_dgp", "unknown key '" + k + "' in " + where);
  }

 private:
  std::string id_;
  nlohmann::json params_ = nlohmann::json::object();
  std::uint64_t seed_ = 0;
  Matrix transition_;
  std::vector<double> state_values_;
  std::shared_ptr<const RenewalLaw> renewal_;
  int levels_ = 0;
  double a_ = 0.0;
  double value_ = 0.5;
};

}  // namespace mixlab::mixing
