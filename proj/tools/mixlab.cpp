#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mixlab/report/commands.hpp"

namespace {

using mixlab::report::Command;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw mixlab::ConfigError(mixlab::report::kModule, "cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw mixlab::ConfigError(mixlab::report::kModule, std::string("config is not valid JSON: ") + e.what());
  }
}

int execute(Command command, const std::string& config_path, const std::string& output_dir) {
  try {
    auto j = load_config(config_path);
    if (!output_dir.empty()) j["output_dir"] = output_dir;
    const auto cfg = mixlab::report::parse_config(j, command, std::getenv(mixlab::report::kOutputDirEnv));
    const auto res = mixlab::report::run(cfg);
    for (const auto& m : res.messages) std::cout << m << "\n";
    std::cout << "wrote " << res.files.size() << " files to " << cfg.output_dir.string() << "\n";
    if (res.failed_checks > 0) {
      std::cerr << "cli_reporting: verify: " << res.failed_checks << " invariant checks failed\n";
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const mixlab::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const mixlab::InvalidArgument& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const mixlab::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "cli_reporting: malformed config value: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "cli_reporting: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixlab: empirical-process rates under mixing, simulations and OT benchmarks"};
  app.set_version_flag("--version", std::string(mixlab::report::kVersion));
  app.require_subcommand(1);

  std::string config_path, output_dir;
  std::optional<Command> chosen;
  const std::vector<std::pair<Command, std::string>> commands{
      {Command::rates, "Rate exponents, application exponents and the entropy-integral bound curve"},
      {Command::phase, "Regime phase diagram over a (beta, alpha) grid"},
      {Command::simulate, "Monte Carlo estimates of E sup |G_n| and fitted slopes"},
      {Command::mixing_est, "Binned estimates of the mixing coefficients of a generator"},
      {Command::ot_bench, "Exact vs Sinkhorn W2 estimates and runtimes"},
      {Command::verify, "Run the invariant bank and report pass/fail counts"},
  };
  for (const auto& [c, help] : commands) {
    auto* sub = app.add_subcommand(mixlab::report::to_string(c), help);
    sub->add_option("-c,--config", config_path, "JSON config file (defaults are used when omitted)");
    sub->add_option("-o,--output-dir", output_dir,
                    std::string("output directory; ") + mixlab::report::kOutputDirEnv + " takes precedence");
    const Command cc = c;
    sub->callback([&chosen, cc] { chosen = cc; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  return execute(*chosen, config_path, output_dir);
}
