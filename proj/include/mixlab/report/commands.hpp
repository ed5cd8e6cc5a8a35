#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixlab/empirical/monte_carlo.hpp"
#include "mixlab/empirical/slope_fit.hpp"
#include "mixlab/mixing/binning.hpp"
#include "mixlab/mixing/dgp.hpp"
#include "mixlab/ot/compare.hpp"
#include "mixlab/rates/applications.hpp"
#include "mixlab/rates/main_bound.hpp"
#include "mixlab/rates/regimes.hpp"
#include "mixlab/report/config.hpp"
#include "mixlab/report/svg.hpp"
#include "mixlab/report/verify_bank.hpp"

namespace mixlab::report {

struct RunResult {
  std::vector<std::string> files;
  std::vector<std::string> messages;  // printed to stdout by the CLI
  std::int64_t failed_checks = 0;
};

namespace cmd {

using nlohmann::json;

inline std::optional<double> read_r(const json& v) {
  if (v.is_string()) return std::nullopt;  // "inf", already schema-checked
  return v.get<double>();
}

inline std::string r_label(const std::optional<double>& r) { return r ? fmt(*r) : "inf"; }

// Short form for figure labels and console lines.
inline std::string brief(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

inline json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

template <typename T>
T get_checked(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(kModule, where + "." + key + " is missing or has the wrong type");
  }
}

inline std::vector<std::int64_t> n_grid(const json& j, const std::string& name, std::int64_t min_n = 1) {
  std::vector<std::int64_t> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ConfigError(kModule, name + " must hold integers");
    const auto n = v.get<std::int64_t>();
    if (n < min_n) throw ConfigError(kModule, name + " entries must be >= " + std::to_string(min_n));
    if (!out.empty() && n <= out.back()) throw ConfigError(kModule, name + " must be strictly increasing");
    out.push_back(n);
  }
  if (out.empty()) throw ConfigError(kModule, name + " must not be empty");
  return out;
}

inline std::vector<double> log_spaced(double lo, double hi, std::int64_t count, const std::string& name) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1)
    throw ConfigError(kModule, name + " grid needs 0 < min <= max and count >= 1");
  std::vector<double> out;
  for (std::int64_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    double v = std::exp(std::log(lo) * (1.0 - t) + std::log(hi) * t);
    // Land exactly on integers and simple fractions the grid passes through.
    for (double m : {1.0, 2.0, 4.0, 8.0})
      if (std::abs(v * m - std::round(v * m)) < 1e-12 * v * m) v = std::round(v * m) / m;
    out.push_back(v);
  }
  return out;
}

// Anchor a theory slope on a fitted log-log line at the centre of the n range.
inline TheoryLine anchored_theory(const std::string& label, double slope, const empirical::SlopeFit& fit) {
  double mx = 0.0;
  for (double n : fit.n_grid) mx += std::log(n);
  mx /= static_cast<double>(fit.n_grid.size());
  return {label, slope, fit.intercept + (fit.slope - slope) * mx};
}

// Entropy exponent of the class behind each statistic: half-lines are VC
// (logarithmic entropy), monotone and Lipschitz classes have exponent 1.
inline double statistic_alpha(empirical::Statistic s) { return s == empirical::Statistic::ks ? 0.0 : 1.0; }

// Predicted n-exponent of E sup |G_n| for the generator, when one exists.
inline std::optional<double> theory_slope(const mixing::Dgp& dgp, empirical::Statistic stat) {
  const std::string& id = dgp.id();
  if (id == "constant") return std::nullopt;
  if (id == "renewal") {
    const double beta = dgp.params().at("beta").get<double>();
    const auto rep = rates::rate_exponent<double>(statistic_alpha(stat), beta, std::nullopt);
    return rep.exponent;
  }
  return 0.0;  // i.i.d. and geometrically mixing generators
}

// ---------------------------------------------------------------- rates

inline rates::apps::App default_app(int i) {
  using namespace rates::apps;
  const double inf = std::numeric_limits<double>::infinity();
  switch (i) {
    case 0: return Dnn{2.0, 4.0, inf};
    case 1: return Dnn{2.0, 4.0, 1.0};
    case 2: return Additive{2.0, inf, 0.1};
    case 3: return ConvexWorst{6.0, 2.0};
    case 4: return ConvexAdapt{10.0, 2.0};
    case 5: return Ot{3.0, 4.0};
    case 6: return Ot{0.5, 4.0};
    case 7: return Classification{3.0, inf};
    default: return Classification{3.0, 2.0};
  }
}

inline std::string app_params(const rates::apps::App& app) {
  using namespace rates::apps;
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Dnn>) return "s=" + fmt(a.s) + " d=" + fmt(a.d) + " gamma=" + fmt(a.gamma);
        else if constexpr (std::is_same_v<T, Additive>)
          return "s=" + fmt(a.s) + " gamma=" + fmt(a.gamma) + " d_exponent=" + fmt(a.d_exponent);
        else if constexpr (std::is_same_v<T, ConvexWorst>) return "d=" + fmt(a.d) + " beta=" + fmt(a.beta);
        else if constexpr (std::is_same_v<T, ConvexAdapt>) return "d=" + fmt(a.d) + " gamma=" + fmt(a.gamma);
        else if constexpr (std::is_same_v<T, Ot>) return "beta=" + fmt(a.beta) + " d=" + fmt(a.d);
        else return "alpha=" + fmt(a.alpha) + " gamma=" + fmt(a.gamma);
      },
      app);
}

inline RunResult run_rates(const ExperimentConfig& cfg, OutputSet& out) {
  const json& p = cfg.params;
  RunResult res;
  CsvTable table("rate_exponents", 1, {"alpha", "beta", "r", "regime", "exponent", "source"});
  json summary{{"tuples", json::array()}};
  for (const auto& t : p["tuples"]) {
    if (!t.is_object()) throw ConfigError(kModule, "params.tuples entries must be objects");
    for (const auto& [k, v] : t.items())
      if (k != "alpha" && k != "beta" && k != "r") throw ConfigError(kModule, "unknown key '" + k + "' in a tuple");
    const double alpha = get_checked<double>(t, "alpha", "tuple");
    const double beta = get_checked<double>(t, "beta", "tuple");
    std::optional<double> r;
    if (t.contains("r")) {
      if (!(t["r"].is_number() || t["r"] == "inf")) throw ConfigError(kModule, "tuple.r must be a number or \"inf\"");
      r = read_r(t["r"]);
    }
    const auto rep = rates::rate_exponent<double>(alpha, beta, r);
    table.add_row({fmt(alpha), fmt(beta), r_label(r), rates::to_string(rep.regime),
                   rep.exponent ? fmt(*rep.exponent) : "", rep.source});
    summary["tuples"].push_back({{"alpha", alpha}, {"beta", beta}, {"r", r_label(r)},
                                 {"regime", rates::to_string(rep.regime)}, {"exponent", opt_json(rep.exponent)},
                                 {"source", rep.source}});
  }
  out.write("rates_table.csv", table.str());
  res.messages.push_back("rate exponents: " + std::to_string(table.size()) + " tuples");

  if (p["applications"].get<bool>()) {
    CsvTable apps("application_exponents", 1, {"application", "parameters", "exponent", "quantity", "regime"});
    for (int i = 0; i < 9; ++i) {
      const auto app = default_app(i);
      const auto rec = rates::apps::application_exponents(app);
      apps.add_row({rec.app, app_params(app), fmt(rec.exponent), rec.quantity, rec.regime});
    }
    out.write("application_exponents.csv", apps.str());
  }

  auto model = classes::entropy_from_json(p["curve_entropy"]);
  const auto r = read_r(p["curve_r"]);
  model.r = r ? *r : classes::kInf;
  model.validate();
  const double beta = p["curve_beta"].get<double>();
  if (!(beta > 0.0)) throw ConfigError(kModule, "params.curve_beta must be positive");
  const auto profile = mixing::MixingProfile::polynomial(1.0, beta);
  CsvTable curve("rate_curve", 1, {"n", "chaining_term", "tail_term", "total", "tau_sigma"});
  std::vector<empirical::SlopePoint> pts;
  for (auto n : n_grid(p["curve_n"], "params.curve_n")) {
    const auto b = rates::main_bound(model, profile, n, r ? *r : classes::kInf);
    curve.add_row({fmt(n), fmt(b.a), fmt(b.tail_term), fmt(b.total), fmt(b.tau_sigma)});
    pts.push_back({static_cast<double>(n), b.total, 0.0});
  }
  out.write("rates_curve.csv", curve.str());
  const auto theory = rates::rate_exponent<double>(model.alpha, beta, r);
  LogLogPlot plot{"Entropy-integral bound vs n", "n", "bound on E sup |G_n|",
                  {{"bound (alpha=" + brief(model.alpha) + ", beta=" + brief(beta) + ")", {}}}, {}};
  for (const auto& q : pts) plot.series[0].points.push_back({q.n, q.estimate, 0.0});
  summary["curve"] = {{"alpha", model.alpha}, {"beta", beta}, {"r", r_label(r)},
                      {"regime", rates::to_string(theory.regime)}, {"theory_exponent", opt_json(theory.exponent)}};
  if (pts.size() >= 4) {
    const auto fit = empirical::slope_fit(pts);
    summary["curve"]["fitted_slope"] = fit.slope;
    if (theory.exponent) plot.theory.push_back(anchored_theory("theory slope " + brief(*theory.exponent), *theory.exponent, fit));
    res.messages.push_back("bound curve slope " + brief(fit.slope) + " (theory " +
                           (theory.exponent ? brief(*theory.exponent) : std::string("boundary")) + ")");
  }
  out.write("rates_curve.svg", render_loglog(plot));
  out.write_json("rates.json", summary);
  return res;
}

// ---------------------------------------------------------------- phase

inline RunResult run_phase(const ExperimentConfig& cfg, OutputSet& out) {
  const json& p = cfg.params;
  const auto betas = log_spaced(p["beta_min"], p["beta_max"], p["beta_count"], "beta");
  const auto alphas = log_spaced(p["alpha_min"], p["alpha_max"], p["alpha_count"], "alpha");
  const auto r = read_r(p["r"]);
  if (r && !(*r > 2.0)) throw ConfigError(kModule, "params.r must exceed 2");
  const auto curve_points = p["curve_points"].get<int>();
  if (curve_points < 2) throw ConfigError(kModule, "params.curve_points must be >= 2");
  const auto d = rates::phase_diagram(betas, alphas, r, curve_points);

  CsvTable cells("phase_cells", 1, {"beta", "alpha", "regime", "exponent", "source"});
  std::map<std::string, int> counts;
  for (const auto& c : d.cells) {
    cells.add_row({fmt(c.beta), fmt(c.alpha), rates::to_string(c.report.regime),
                   c.report.exponent ? fmt(*c.report.exponent) : "", c.report.source});
    ++counts[rates::to_string(c.report.regime)];
  }
  CsvTable curve("phase_curve", 1, {"beta", "alpha"});
  for (const auto& [b, a] : d.curve) curve.add_row({fmt(b), fmt(a)});
  const double knee = r ? *r / (*r - 2.0) : 1.0;
  const double knee_alpha = rates::phase_boundary_alpha(knee, r);
  bool knee_on_curve = false;
  for (const auto& [b, a] : d.curve) knee_on_curve = knee_on_curve || (b == knee && a == knee_alpha);

  out.write("phase_cells.csv", cells.str());
  out.write("phase_curve.csv", curve.str());
  out.write("phase.svg", render_phase(d, "Regimes of E sup |G_n| (r = " + r_label(r) + ")"));
  out.write_json("phase.json", {{"r", r_label(r)},
                                {"cells", d.cells.size()},
                                {"regime_counts", counts},
                                {"knee", {{"beta", knee}, {"alpha", knee_alpha}, {"on_curve", knee_on_curve}}}});
  RunResult res;
  res.messages.push_back("phase diagram: " + std::to_string(d.cells.size()) + " cells, boundary knee at beta=" +
                         brief(knee) + " alpha=" + brief(knee_alpha));
  return res;
}

// ---------------------------------------------------------------- simulate

inline RunResult run_simulate(const ExperimentConfig& cfg, OutputSet& out) {
  const json& p = cfg.params;
  empirical::Statistic stat;
  try {
    stat = empirical::statistic_from_string(p["statistic"].get<std::string>());
  } catch (const Error& e) {
    throw ConfigError(kModule, std::string("params.statistic: ") + e.what());
  }
  const auto grid = n_grid(p["n_grid"], "params.n_grid");
  const auto reps = p["replications"].get<std::int64_t>();
  const auto threads = p["threads"].get<int>();
  if (reps < 30) throw ConfigError(kModule, "params.replications must be >= 30");
  if (threads < 1) throw ConfigError(kModule, "params.threads must be >= 1");
  if (p["series"].empty()) throw ConfigError(kModule, "params.series must not be empty");

  struct Entry {
    std::string label;
    mixing::Dgp dgp;
  };
  std::vector<Entry> entries;
  for (const auto& s : p["series"]) {
    if (!s.is_object()) throw ConfigError(kModule, "params.series entries must be objects");
    for (const auto& [k, v] : s.items())
      if (k != "label" && k != "dgp") throw ConfigError(kModule, "unknown key '" + k + "' in a series entry");
    entries.push_back({get_checked<std::string>(s, "label", "series"), mixing::Dgp::from_json(s.value("dgp", json()))});
  }

  RunResult res;
  CsvTable table("simulate", 1, {"series", "n", "mean", "standard_error", "replications"});
  CsvTable fits("simulate_fit", 1, {"series", "slope", "slope_se", "intercept", "r_squared", "theory_slope"});
  LogLogPlot plot{"E sup |G_n| (" + empirical::to_string(stat) + ")", "n", "E sup |G_n|", {}, {}};
  json summary{{"statistic", empirical::to_string(stat)}, {"series", json::array()}};
  for (std::size_t si = 0; si < entries.size(); ++si) {
    const auto& e = entries[si];
    Series series{e.label, {}};
    std::vector<empirical::SlopePoint> pts;
    for (auto n : grid) {
      const auto seed = derive_seed(derive_seed(cfg.base_seed, si), static_cast<std::uint64_t>(n));
      const auto m = empirical::mc_sup_expectation(e.dgp, stat, n, reps, seed, threads);
      table.add_row({e.label, fmt(n), fmt(m.mean), fmt(m.standard_error), fmt(reps)});
      series.points.push_back({static_cast<double>(n), m.mean, m.standard_error});
      pts.push_back({static_cast<double>(n), m.mean, m.standard_error});
    }
    plot.series.push_back(series);
    const auto theory = theory_slope(e.dgp, stat);
    json js{{"label", e.label}, {"dgp", e.dgp.to_json()}, {"theory_slope", opt_json(theory)}};
    if (pts.size() >= 4) {
      const auto fit = empirical::slope_fit(pts);
      fits.add_row({e.label, fmt(fit.slope), fmt(fit.slope_se), fmt(fit.intercept), fmt(fit.r_squared),
                    theory ? fmt(*theory) : ""});
      if (theory) plot.theory.push_back(anchored_theory(e.label + " theory " + brief(*theory), *theory, fit));
      js["slope"] = fit.slope;
      js["slope_se"] = fit.slope_se;
      res.messages.push_back(e.label + ": slope " + brief(fit.slope) + " +- " + brief(fit.slope_se) +
                             (theory ? " (theory " + brief(*theory) + ")" : std::string()));
    }
    summary["series"].push_back(js);
  }
  out.write("simulate.csv", table.str());
  if (fits.size() > 0) out.write("simulate_fit.csv", fits.str());
  out.write("simulate.svg", render_loglog(plot));
  out.write_json("simulate.json", summary);
  return res;
}

// ---------------------------------------------------------------- mixing-est

inline RunResult run_mixing_est(const ExperimentConfig& cfg, OutputSet& out) {
  const json& p = cfg.params;
  const auto dgp = mixing::Dgp::from_json(p["dgp"]);
  const auto n = p["n"].get<std::int64_t>();
  const auto q_max = p["q_max"].get<std::int64_t>();
  const auto bins = p["bins"].get<int>();
  const auto mode_name = p["binning"].get<std::string>();
  mixing::BinningMode mode;
  if (mode_name == "equal_frequency") mode = mixing::BinningMode::equal_frequency;
  else if (mode_name == "distinct_values") mode = mixing::BinningMode::distinct_values;
  else throw ConfigError(kModule, "params.binning must be equal_frequency or distinct_values");
  if (n < 1 || q_max < 1) throw ConfigError(kModule, "params.n and params.q_max must be positive");

  const auto sample = dgp.generate(n, derive_seed(cfg.base_seed, 0));
  CsvTable table("mixing_estimate", 1, {"q", "estimate", "exact"});
  Series est{"binned estimate (" + std::to_string(bins) + " cells)", {}}, exact{"exact coefficient", {}};
  json rows = json::array();
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const double b = mixing::estimate_beta_binning(sample, q, bins, mode);
    std::optional<double> ex;
    if (sample.mixing_oracle) ex = sample.mixing_oracle->coefficient(q);
    table.add_row({fmt(q), fmt(b), ex ? fmt(*ex) : ""});
    rows.push_back({{"q", q}, {"estimate", b}, {"exact", opt_json(ex)}});
    est.points.push_back({static_cast<double>(q), b, 0.0});
    if (ex) exact.points.push_back({static_cast<double>(q), *ex, 0.0});
  }
  out.write("mixing_est.csv", table.str());
  out.write_json("mixing_est.json", {{"dgp", dgp.to_json()}, {"n", n}, {"bins", bins}, {"rows", rows}});
  LogLogPlot plot{"Mixing coefficient vs lag", "lag q", "beta(q)", {est}, {}};
  if (!exact.points.empty()) plot.series.push_back(exact);
  bool any_positive = false;
  for (const auto& s : plot.series)
    for (const auto& pt : s.points) any_positive = any_positive || pt.y > 0.0;
  RunResult res;
  if (any_positive) out.write("mixing_est.svg", render_loglog(plot));
  else res.messages.push_back("all coefficients are zero; no figure written");
  res.messages.push_back("mixing estimate for q = 1.." + std::to_string(q_max) + " at n = " + std::to_string(n));
  return res;
}

// ---------------------------------------------------------------- ot-bench

inline RunResult run_ot_bench(const ExperimentConfig& cfg, OutputSet& out) {
  const json& p = cfg.params;
  ot::CompareConfig c;
  c.dgp_x = p["dgp_x"];
  c.dgp_y = p["dgp_y"];
  mixing::Dgp::from_json(c.dgp_x);
  mixing::Dgp::from_json(c.dgp_y);
  c.d = p["d"].get<int>();
  c.beta = p["beta"].get<double>();
  c.n_grid = n_grid(p["n_grid"], "params.n_grid", 2);
  c.replications = p["replications"].get<std::int64_t>();
  c.base_seed = cfg.base_seed;
  if (!p["epsilon"].is_null()) c.eps_override = p["epsilon"].get<double>();
  if (!p["k"].is_null()) {
    const double k = p["k"].get<double>();
    if (k < 1 || k != std::floor(k)) throw ConfigError(kModule, "params.k must be a positive integer");
    c.k_override = static_cast<std::int64_t>(k);
  }
  if (c.d < 2) throw ConfigError(kModule, "params.d must be >= 2");
  if (c.replications < 1) throw ConfigError(kModule, "params.replications must be >= 1");
  if (c.d < 4 && !(c.eps_override && c.k_override))
    throw ConfigError(kModule, "the schedule needs d >= 4; give both epsilon and k for smaller d");

  const auto rep = ot::compare_estimators(c);
  CsvTable table("ot_bench", 1,
                 {"n", "k", "epsilon", "regime", "exact_mean", "exact_se", "sinkhorn_mean", "sinkhorn_se"});
  CsvTable timing("ot_timings", 1, {"n", "exact_seconds", "sinkhorn_seconds"});
  Series ex{"exact W2^2", {}}, sk{"Sinkhorn divergence", {}};
  for (const auto& r : rep.rows) {
    table.add_row({fmt(r.n), fmt(r.k), fmt(r.eps), r.regime, fmt(r.exact.mean), fmt(r.exact.standard_error),
                   fmt(r.sinkhorn.mean), fmt(r.sinkhorn.standard_error)});
    timing.add_row({fmt(r.n), fmt(r.exact_seconds), fmt(r.sinkhorn_seconds)});
    ex.points.push_back({static_cast<double>(r.n), r.exact.mean, r.exact.standard_error});
    sk.points.push_back({static_cast<double>(r.n), r.sinkhorn.mean, r.sinkhorn.standard_error});
  }
  out.write("ot_bench.csv", table.str());
  json summary{{"regime", rep.regime}, {"schedule_runtime_exponent", rep.schedule_runtime_exponent}};
  out.write_json("ot_bench.json", summary);
  LogLogPlot plot{"Exact vs entropic W2 estimates", "n", "estimate", {ex, sk}, {}};
  out.write("ot_bench.svg", render_loglog(plot));

  RunResult res;
  std::string tline = "runtime exponents:";
  json tj = json::object();
  if (rep.exact_runtime && rep.sinkhorn_runtime) {
    tj = {{"exact_runtime_exponent", rep.exact_runtime->slope},
          {"sinkhorn_runtime_exponent", rep.sinkhorn_runtime->slope},
          {"schedule_runtime_exponent", rep.schedule_runtime_exponent}};
    tline += " exact " + brief(rep.exact_runtime->slope) + ", sinkhorn " + brief(rep.sinkhorn_runtime->slope);
    res.messages.push_back(tline);
  }
  out.write_volatile("ot_timings.csv", timing.str());
  out.write_volatile("ot_timings.json", tj.dump(2) + "\n");
  res.messages.push_back("ot comparison over " + std::to_string(rep.rows.size()) + " sample sizes, regime " +
                         (rep.regime.empty() ? std::string("override") : rep.regime));
  return res;
}

// ---------------------------------------------------------------- verify

inline RunResult run_verify(const ExperimentConfig& cfg, OutputSet& out) {
  const json& p = cfg.params;
  VerifySettings s;
  s.chains = p["chains"];
  s.h_per_chain = p["h_per_chain"];
  s.q_max = p["q_max"];
  s.tau_configs = p["tau_configs"];
  s.sinkhorn_trials = p["sinkhorn_trials"];
  s.beta_chains = p["beta_chains"];
  s.r_values.clear();
  for (const auto& v : p["r_values"]) {
    if (!v.is_number() || !(v.get<double>() > 2.0)) throw ConfigError(kModule, "params.r_values must be numbers > 2");
    s.r_values.push_back(v.get<double>());
  }
  for (int v : {s.chains, s.h_per_chain, s.q_max, s.tau_configs, s.sinkhorn_trials, s.beta_chains})
    if (v < 0) throw ConfigError(kModule, "verify counts must be nonnegative");
  s.seed = cfg.base_seed;

  const auto groups = run_verify_bank(s);
  RunResult res;
  CsvTable table("verify", 1, {"group", "passed", "failed"});
  json j{{"groups", json::array()}};
  std::int64_t passed = 0, failed = 0;
  for (const auto& g : groups) {
    table.add_row({g.name, fmt(g.passed), fmt(g.failed)});
    j["groups"].push_back({{"name", g.name}, {"passed", g.passed}, {"failed", g.failed},
                           {"first_failure", g.first_failure}});
    passed += g.passed;
    failed += g.failed;
    res.messages.push_back(g.name + ": " + std::to_string(g.passed) + " passed, " + std::to_string(g.failed) +
                           " failed" + (g.failed ? " (first: " + g.first_failure + ")" : std::string()));
  }
  j["passed"] = passed;
  j["failed"] = failed;
  out.write("verify.csv", table.str());
  out.write_json("verify.json", j);
  res.messages.push_back("total: " + std::to_string(passed) + " passed, " + std::to_string(failed) + " failed");
  res.failed_checks = failed;
  return res;
}

}  // namespace cmd

// Runs one experiment and writes its files plus manifest.json into the
// output directory.
inline RunResult run(const ExperimentConfig& cfg) {
  OutputSet out(cfg.output_dir);
  RunResult res;
  switch (cfg.command) {
    case Command::rates: res = cmd::run_rates(cfg, out); break;
    case Command::phase: res = cmd::run_phase(cfg, out); break;
    case Command::simulate: res = cmd::run_simulate(cfg, out); break;
    case Command::mixing_est: res = cmd::run_mixing_est(cfg, out); break;
    case Command::ot_bench: res = cmd::run_ot_bench(cfg, out); break;
    case Command::verify: res = cmd::run_verify(cfg, out); break;
  }
  out.write_manifest(to_string(cfg.command), cfg.resolved());
  res.files = out.names();
  res.files.push_back("manifest.json");
  return res;
}

}  // namespace mixlab::report
