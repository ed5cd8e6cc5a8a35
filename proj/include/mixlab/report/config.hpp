#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mixlab/report/io.hpp"

namespace mixlab::report {

enum class Command { rates, phase, simulate, mixing_est, ot_bench, verify };

inline std::string to_string(Command c) {
  switch (c) {
    case Command::rates: return "rates";
    case Command::phase: return "phase";
    case Command::simulate: return "simulate";
    case Command::mixing_est: return "mixing-est";
    case Command::ot_bench: return "ot-bench";
    case Command::verify: return "verify";
  }
  return "?";
}

// Accepts both the dashed subcommand spelling and the underscored one.
inline Command command_from_string(const std::string& s) {
  if (s == "rates") return Command::rates;
  if (s == "phase") return Command::phase;
  if (s == "simulate") return Command::simulate;
  if (s == "mixing-est" || s == "mixing_est") return Command::mixing_est;
  if (s == "ot-bench" || s == "ot_bench") return Command::ot_bench;
  if (s == "verify") return Command::verify;
  throw ConfigError(kModule, "unknown command '" + s + "'");
}

enum class FieldType { number, integer, boolean, string, object, array, number_or_inf, optional_number };

struct Field {
  FieldType type;
  nlohmann::json fallback;
};

using Schema = std::map<std::string, Field>;

namespace cfgdetail {

using nlohmann::json;

inline json pow2_grid(int lo, int hi) {
  json a = json::array();
  for (int e = lo; e <= hi; ++e) a.push_back(std::int64_t{1} << e);
  return a;
}

inline const char* type_name(FieldType t) {
  switch (t) {
    case FieldType::number: return "a number";
    case FieldType::integer: return "an integer";
    case FieldType::boolean: return "a boolean";
    case FieldType::string: return "a string";
    case FieldType::object: return "an object";
    case FieldType::array: return "an array";
    case FieldType::number_or_inf: return "a number or \"inf\"";
    case FieldType::optional_number: return "a number or null";
  }
  return "?";
}

inline bool matches(FieldType t, const json& v) {
  switch (t) {
    case FieldType::number: return v.is_number();
    case FieldType::integer: return v.is_number_integer();
    case FieldType::boolean: return v.is_boolean();
    case FieldType::string: return v.is_string();
    case FieldType::object: return v.is_object();
    case FieldType::array: return v.is_array();
    case FieldType::number_or_inf: return v.is_number() || (v.is_string() && v.get<std::string>() == "inf");
    case FieldType::optional_number: return v.is_null() || v.is_number();
  }
  return false;
}

}  // namespace cfgdetail

inline const Schema& schema_for(Command c) {
  using cfgdetail::json;
  using cfgdetail::pow2_grid;
  using F = FieldType;
  static const Schema rates{
      {"tuples", {F::array, json::parse(R"([
          {"alpha": 1.0, "beta": 0.5, "r": "inf"}, {"alpha": 4.0, "beta": 0.5, "r": "inf"},
          {"alpha": 1.0, "beta": 2.0, "r": "inf"}, {"alpha": 3.0, "beta": 2.0, "r": "inf"},
          {"alpha": 1.0, "beta": 1.0, "r": 4.0}, {"alpha": 1.0, "beta": 3.0, "r": 4.0}])")}},
      {"applications", {F::boolean, true}},
      {"curve_entropy", {F::object, json::parse(R"({"alpha": 1.0})")}},
      {"curve_beta", {F::number, 0.5}},
      {"curve_r", {F::number_or_inf, "inf"}},
      {"curve_n", {F::array, pow2_grid(6, 20)}},
  };
  static const Schema phase{
      {"beta_min", {F::number, 0.1}},   {"beta_max", {F::number, 10.0}}, {"beta_count", {F::integer, 41}},
      {"alpha_min", {F::number, 0.25}}, {"alpha_max", {F::number, 16.0}}, {"alpha_count", {F::integer, 37}},
      {"r", {F::number_or_inf, "inf"}}, {"curve_points", {F::integer, 200}},
  };
  static const Schema simulate{
      {"series", {F::array, json::parse(R"([
          {"label": "iid", "dgp": {"generator": "iid_uniform"}},
          {"label": "renewal beta=0.5",
           "dgp": {"generator": "renewal", "params": {"beta": 0.5, "L_max": 4194304}}}])")}},
      {"statistic", {F::string, "ks"}},
      {"n_grid", {F::array, pow2_grid(10, 14)}},
      {"replications", {F::integer, 200}},
      {"threads", {F::integer, 1}},
  };
  static const Schema mixing_est{
      {"dgp", {F::object, json::parse(R"({"generator": "markov",
          "params": {"transition": [[0.9, 0.1, 0.0], [0.05, 0.9, 0.05], [0.0, 0.1, 0.9]]}})")}},
      {"n", {F::integer, 100000}},
      {"q_max", {F::integer, 10}},
      {"bins", {F::integer, 8}},
      {"binning", {F::string, "distinct_values"}},
  };
  static const Schema ot_bench{
      {"dgp_x", {F::object, json::parse(R"({"generator": "iid_uniform"})")}},
      {"dgp_y", {F::object, json::parse(R"({"generator": "iid_uniform"})")}},
      {"d", {F::integer, 4}},
      {"beta", {F::number, 3.0}},
      {"n_grid", {F::array, pow2_grid(5, 8)}},
      {"replications", {F::integer, 3}},
      {"epsilon", {F::optional_number, nullptr}},
      {"k", {F::optional_number, nullptr}},
  };
  static const Schema verify{
      {"chains", {F::integer, 20}},       {"h_per_chain", {F::integer, 10}}, {"q_max", {F::integer, 50}},
      {"r_values", {F::array, json::array({3.0, 4.0, 8.0})}}, {"tau_configs", {F::integer, 100}},
      {"sinkhorn_trials", {F::integer, 20}}, {"beta_chains", {F::integer, 50}},
  };
  switch (c) {
    case Command::rates: return rates;
    case Command::phase: return phase;
    case Command::simulate: return simulate;
    case Command::mixing_est: return mixing_est;
    case Command::ot_bench: return ot_bench;
    case Command::verify: return verify;
  }
  return verify;
}

// Fills defaults and rejects unknown keys or wrongly typed values.
inline nlohmann::json resolve_params(Command c, const nlohmann::json& params) {
  if (!params.is_object()) throw ConfigError(kModule, "params must be an object");
  const Schema& schema = schema_for(c);
  for (const auto& [k, v] : params.items()) {
    const auto it = schema.find(k);
    if (it == schema.end())
      throw ConfigError(kModule, "unknown key '" + k + "' in params of command " + to_string(c));
    if (!cfgdetail::matches(it->second.type, v))
      throw ConfigError(kModule, "params." + k + " must be " + cfgdetail::type_name(it->second.type));
  }
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, f] : schema) out[k] = params.contains(k) ? params.at(k) : f.fallback;
  return out;
}

struct ExperimentConfig {
  Command command = Command::verify;
  nlohmann::json params;  // resolved
  std::filesystem::path output_dir = "mixlab-out";
  std::uint64_t base_seed = 20240101;

  // The full record echoed into the manifest. The output directory is left
  // out so that relocating a run does not change its hash.
  nlohmann::json resolved() const {
    return {{"command", to_string(command)}, {"base_seed", base_seed}, {"params", params}};
  }
};

inline constexpr const char* kOutputDirEnv = "MIXLAB_OUTPUT_DIR";

// Top-level keys: command, output_dir, base_seed, params. `command` may be
// given on the command line instead; when both are present they must agree.
inline ExperimentConfig parse_config(const nlohmann::json& j, std::optional<Command> cli_command,
                                     const char* env_output_dir = nullptr) {
  if (!j.is_object()) throw ConfigError(kModule, "config must be a JSON object");
  static const std::vector<std::string> top{"command", "output_dir", "base_seed", "params"};
  for (const auto& [k, v] : j.items())
    if (std::find(top.begin(), top.end(), k) == top.end())
      throw ConfigError(kModule, "unknown top-level key '" + k + "'");
  ExperimentConfig cfg;
  std::optional<Command> file_command;
  if (j.contains("command")) {
    if (!j["command"].is_string()) throw ConfigError(kModule, "command must be a string");
    file_command = command_from_string(j["command"].get<std::string>());
  }
  if (cli_command && file_command && *cli_command != *file_command)
    throw ConfigError(kModule, "config is for command " + to_string(*file_command) + ", not " +
                                   to_string(*cli_command));
  if (!cli_command && !file_command) throw ConfigError(kModule, "no command given");
  cfg.command = cli_command ? *cli_command : *file_command;
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError(kModule, "output_dir must be a string");
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  if (env_output_dir && *env_output_dir) cfg.output_dir = env_output_dir;
  if (j.contains("base_seed")) {
    if (!j["base_seed"].is_number_unsigned())
      throw ConfigError(kModule, "base_seed must be a nonnegative integer");
    cfg.base_seed = j["base_seed"].get<std::uint64_t>();
  }
  cfg.params = resolve_params(cfg.command, j.value("params", nlohmann::json::object()));
  return cfg;
}

}  // namespace mixlab::report
