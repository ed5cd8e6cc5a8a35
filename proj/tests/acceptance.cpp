// Acceptance harness: one PASS/FAIL line per criterion. Tolerances are fixed
// here; the process exits nonzero if any non-advisory criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "mixlab/core/rational.hpp"
#include "mixlab/empirical/monte_carlo.hpp"
#include "mixlab/empirical/slope_fit.hpp"
#include "mixlab/mixing/binning.hpp"
#include "mixlab/mixing/dgp.hpp"
#include "mixlab/mixing/generators.hpp"
#include "mixlab/mixing/markov.hpp"
#include "mixlab/ot/compare.hpp"
#include "mixlab/rates/applications.hpp"
#include "mixlab/rates/gamma_bound.hpp"
#include "mixlab/rates/pivotal.hpp"
#include "mixlab/rates/regimes.hpp"
#include "mixlab/report/verify_bank.hpp"

using namespace mixlab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int g_failures = 0;

void criterion(const char* id, const char* title, bool advisory, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass && !advisory) ++g_failures;
  std::printf("%s %s%s  %s | %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", advisory ? " (advisory)" : "", title,
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string f(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

empirical::SlopeFit ks_slope(const std::string& dgp_json, std::uint64_t seed) {
  const auto dgp = mixing::Dgp::from_json(nlohmann::json::parse(dgp_json));
  std::vector<empirical::SlopePoint> pts;
  for (int e = 10; e <= 16; ++e) {
    const std::int64_t n = std::int64_t{1} << e;
    const auto m = empirical::mc_sup_expectation(dgp, empirical::Statistic::ks, n, 200,
                                                 derive_seed(seed, static_cast<std::uint64_t>(e)));
    pts.push_back({static_cast<double>(n), m.mean, m.standard_error});
  }
  return empirical::slope_fit(pts);
}

using R = Rational;

struct GoldenTuple {
  R alpha, beta;
  std::optional<R> r;
  rates::Regime regime;
  std::optional<R> exponent;
};

}  // namespace

int main() {
  std::printf("mixlab acceptance run\n");

  criterion("AC1", "long-range renewal (beta=0.5) KS slope = 1/6 +- 0.06", false, [] {
    const auto fit = ks_slope(R"({"generator": "renewal", "params": {"beta": 0.5, "L_max": 4194304}})", 101);
    const double target = (1.0 - 0.5) / (2.0 * 1.5);
    return Outcome{std::abs(fit.slope - target) <= 0.06,
                   "slope " + f(fit.slope) + " +- " + f(fit.slope_se, 2) + ", target " + f(target)};
  });

  criterion("AC2", "short-range (beta=3) slope 0 +- 0.05; i.i.d. slope 0 +- 0.04", false, [] {
    const auto dep = ks_slope(R"({"generator": "renewal", "params": {"beta": 3.0, "L_max": 4194304}})", 202);
    const auto iid = ks_slope(R"({"generator": "iid_uniform"})", 303);
    return Outcome{std::abs(dep.slope) <= 0.05 && std::abs(iid.slope) <= 0.04,
                   "beta=3 slope " + f(dep.slope) + ", iid slope " + f(iid.slope)};
  });

  criterion("AC3", "rate-exponent golden table matches closed forms exactly", false, [] {
    using rates::Regime;
    const std::optional<R> inf, r4(R(4)), r3(R(3));
    const std::vector<GoldenTuple> table{
        {R(3), R(2), inf, Regime::iid_like, R(1, 6)},
        {R(1), R(1, 2), inf, Regime::dependence_dominated, R(1, 6)},
        {R(4), R(1, 2), inf, Regime::iid_like, R(1, 4)},
        {R(1), R(2), inf, Regime::donsker_bounded, R(0)},
        {R(2), R(3), inf, Regime::boundary, std::nullopt},
        {R(3), R(1, 2), inf, Regime::boundary, std::nullopt},
        {R(1), R(1), inf, Regime::boundary, std::nullopt},
        {R(1), R(3), r4, Regime::donsker_bounded, R(0)},
        {R(3), R(3), r4, Regime::iid_like, R(1, 6)},
        {R(2), R(1, 2), r4, Regime::dependence_dominated, R(1, 4)},
        {R(5), R(1, 2), r4, Regime::iid_like, R(3, 10)},
        {R(1), R(2), r4, Regime::boundary, std::nullopt},
        {R(2), R(3), r4, Regime::boundary, std::nullopt},
        {R(4), R(1, 2), r4, Regime::boundary, std::nullopt},
        {R(1), R(1), r3, Regime::dependence_dominated, R(1, 6)},
    };
    int bad = 0;
    std::string first;
    for (const auto& t : table) {
      const auto rep = rates::rate_exponent(t.alpha, t.beta, t.r);
      const bool ok = rep.regime == t.regime && rep.exponent.has_value() == t.exponent.has_value() &&
                      (!t.exponent || *rep.exponent == *t.exponent);
      if (!ok && bad++ == 0)
        first = " first mismatch at alpha=" + t.alpha.str() + " beta=" + t.beta.str();
    }
    return Outcome{bad == 0, std::to_string(table.size()) + " tuples, " + std::to_string(bad) + " mismatches" + first};
  });

  criterion("AC4", "variance bound holds on 20 chains x 10 h x q 1..50 x r {3,4,8}", false, [] {
    report::VerifySettings s;
    s.seed = 404;
    const auto g = report::check_variance_bound(s);
    return Outcome{g.failed == 0 && g.passed == 30000,
                   std::to_string(g.passed) + " checks, " + std::to_string(g.failed) + " violations"};
  });

  criterion("AC5", "tau_q: 1 under i.i.d., monotone in delta, scan = first crossing", false, [] {
    report::VerifySettings s;
    s.seed = 505;
    const auto g = report::check_tau(s);
    // Worked example against an exhaustive scan written out here.
    const auto profile = mixing::MixingProfile::polynomial(1.0, 0.5);
    classes::EntropyModel m;
    m.alpha = 4.0;
    const classes::EntropyBound h(m);
    const std::int64_t n = 10000;
    const double sum = rates::dyadic_entropy_sum(h, 0.5);
    std::int64_t brute = n;
    for (std::int64_t q = 0; q <= n; ++q)
      if (profile.coefficient(q) <= static_cast<double>(q) / static_cast<double>(n) * sum) {
        brute = q;
        break;
      }
    const auto got = rates::tau_q(profile, h, 0.5, n);
    return Outcome{g.failed == 0 && got == brute,
                   std::to_string(g.passed) + " checks passed, " + std::to_string(g.failed) +
                       " failed; worked example tau=" + std::to_string(got) + " scan=" + std::to_string(brute)};
  });

  criterion("AC6", "exact beta oracle vs brute force; binned estimate within 0.05", false, [] {
    report::VerifySettings s;
    s.seed = 606;
    const auto g = report::check_beta_oracle(s);
    Rng rng(6060);
    double worst = 0.0;
    for (int c = 0; c < 5; ++c) {
      mixing::Matrix p(4, 4);
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) p(i, j) = (i == j ? 4.0 : 0.0) + rng.uniform();
        p.row(i) /= p.row(i).sum();
      }
      const auto pi = mixing::stationary_distribution(p);
      const auto sample = mixing::gen_finite_markov(p, {0.0, 1.0, 2.0, 3.0}, 100000, derive_seed(6061, c));
      for (int q = 1; q <= 10; ++q) {
        const double est = mixing::estimate_beta_binning(sample, q, 4, mixing::BinningMode::distinct_values);
        worst = std::max(worst, std::abs(est - mixing::exact_beta_markov(p, pi, q)));
      }
    }
    return Outcome{g.failed == 0 && g.passed == 150 && worst <= 0.05,
                   std::to_string(g.passed) + " oracle checks, " + std::to_string(g.failed) +
                       " failed; worst binned error " + f(worst, 3)};
  });

  criterion("AC7", "Sinkhorn and exact W2 suite", false, [] {
    Rng rng(707);
    int bad = 0, total = 0;
    auto check = [&](bool ok) {
      ++total;
      if (!ok) ++bad;
    };
    for (int t = 0; t < 20; ++t) {
      const int n = 2 + static_cast<int>(rng.below(12));
      const auto x = report::bank::gaussian_cloud(rng, n, 3), y = report::bank::gaussian_cloud(rng, n, 3);
      check(std::abs(ot::sinkhorn_divergence(x, x, 0.3, 60)) <= 1e-10);
      const auto c = ot::squared_cost(x, y);
      auto st = ot::sinkhorn_init(c, 0.5);
      ot::sinkhorn_iterate(c, st);
      double prev = ot::sinkhorn_objective(st);
      bool mono = true;
      for (int k = 0; k < 100; ++k) {
        ot::sinkhorn_iterate(c, st);
        const double v = ot::sinkhorn_objective(st);
        mono = mono && v >= prev - 1e-10;
        prev = v;
      }
      check(mono);
    }
    // Two points {0, 1} against themselves: off-diagonal mass t, cost 2t, KL penalty.
    auto obj = [](double t) {
      auto xl = [](double p) { return p > 0.0 ? p * std::log(4.0 * p) : 0.0; };
      return 2.0 * t + 2.0 * xl(0.5 - t) + 2.0 * xl(t);
    };
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 300; ++it) {
      const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
      (obj(a) < obj(b) ? hi : lo) = obj(a) < obj(b) ? b : a;
    }
    const ot::Cloud two = ot::cloud_from_rows({{0.0}, {1.0}});
    const double two_point_err = std::abs(ot::t_eps_k(two, two, 1.0, 500) - obj(0.5 * (lo + hi)));
    check(two_point_err <= 1e-6);
    for (int n = 1; n <= 6; ++n)
      for (int t = 0; t < 10; ++t) {
        const auto x = report::bank::gaussian_cloud(rng, n, 2), y = report::bank::gaussian_cloud(rng, n, 2);
        check(std::abs(ot::exact_w2(x, y) - report::bank::enumerate_w2(x, y)) <= 1e-12);
      }
    for (int t = 0; t < 100; ++t) {
      const int n = 1 + static_cast<int>(rng.below(50));
      const auto x = report::bank::gaussian_cloud(rng, n, 1), y = report::bank::gaussian_cloud(rng, n, 1);
      check(std::abs(ot::exact_w2_sorted_1d(x, y) - ot::exact_w2_assignment(x, y)) <= 1e-12);
    }
    return Outcome{bad == 0, std::to_string(total) + " checks, " + std::to_string(bad) +
                                 " failed; two-point error " + f(two_point_err, 2)};
  });

  criterion("AC8", "localization fixed point: VC ratio in [1/4,4]; exponents within 0.02", false, [] {
    std::string detail;
    bool ok = true;
    double worst_ratio_lo = 1e300, worst_ratio_hi = 0.0;
    for (double g : {0.5, 1.0, 3.0}) {
      classes::EntropyModel m;
      m.alpha = 0.0;
      m.r = 2.0;
      m.D = 5.0;
      std::vector<double> ln, ld;
      for (int k = 10; k <= 20; ++k) {
        const double n = std::ldexp(1.0, k);
        const double d = rates::solve_delta_n([&](double x) { return rates::pi_n(m, g, x, n); }, n, 1.0).delta;
        const double ratio = d * d / std::pow(m.D / n, g / (g + 1.0));
        worst_ratio_lo = std::min(worst_ratio_lo, ratio);
        worst_ratio_hi = std::max(worst_ratio_hi, ratio);
        ln.push_back(std::log(n));
        ld.push_back(std::log(d * d));
      }
      const double slope = ols_slope(ln, ld);
      ok = ok && std::abs(slope + g / (g + 1.0)) <= 0.02;
      detail += "VC gamma=" + f(g, 2) + " slope " + f(slope) + " (" + f(-g / (g + 1.0)) + "); ";
    }
    ok = ok && worst_ratio_lo >= 0.25 && worst_ratio_hi <= 4.0;
    detail += "ratio range [" + f(worst_ratio_lo, 3) + ", " + f(worst_ratio_hi, 3) + "]; ";
    const double alpha = 8.0, g = 10.0;
    std::vector<double> ln, ld;
    for (int k = 10; k <= 20; ++k) {
      const double n = std::ldexp(1.0, k);
      auto pi = [&](double x) {
        classes::EntropyModel m;
        m.alpha = alpha;
        m.r = 2.0;
        m.theta = x;
        m.sigma = x;
        return rates::pi_n(m, g, x, n);
      };
      const double d = rates::solve_delta_n(pi, n, 1.0).delta;
      ln.push_back(std::log(n));
      ld.push_back(std::log(d * d));
    }
    const double slope = ols_slope(ln, ld);
    ok = ok && std::abs(slope + 2.0 / alpha) <= 0.02;
    detail += "adaptation alpha=8 gamma=10 slope " + f(slope) + " (" + f(-2.0 / alpha) + ")";
    return Outcome{ok, detail};
  });

  criterion("AC9", "phase boundary through (1, 2); closed forms agree on the curve", false, [] {
    const auto d = rates::phase_diagram({0.5, 1.0, 2.0}, {1.0, 2.0, 3.0}, std::nullopt);
    bool knee = false;
    for (const auto& [b, a] : d.curve) knee = knee || (b == 1.0 && a == 2.0);
    int bad = 0, total = 0;
    for (std::int64_t num = 1; num <= 40; ++num) {
      const R beta(num, 20);
      if (beta <= R(1)) {
        const R curve = (R(1) + beta) / beta;
        ++total;
        if ((R(1) - beta) / (R(2) * (R(1) + beta)) != R(1, 2) - R(1) / curve) ++bad;
      }
      for (std::int64_t r : {3, 4, 6, 10}) {
        const R rr(r);
        if (!(beta <= rr / (rr - R(2)))) continue;
        const R curve = rr * (R(1) + beta) / (beta * (rr - R(1)));
        const R e = (R(1) - beta * (R(1) - R(2) / rr)) / (R(2) * (R(1) + beta));
        ++total;
        if (e != R(1, 2) - R(1) / curve) ++bad;
        if (beta == rr / (rr - R(2)) && curve != R(2)) ++bad;
      }
    }
    if ((R(1) + R(1)) / R(1) != R(2)) ++bad;
    return Outcome{knee && bad == 0, std::string("knee ") + (knee ? "on" : "off") + " curve; " +
                                         std::to_string(total) + " rational points, " + std::to_string(bad) +
                                         " disagreements"};
  });

  criterion("AC10", "application exponent table, including gamma -> inf limits", false, [] {
    using namespace rates::apps;
    const double inf = std::numeric_limits<double>::infinity();
    struct Row {
      App app;
      double expect;
    };
    const std::vector<Row> rows{
        {Dnn{2, 4, inf}, 2.0 / (4.0 + 4.0)},
        {Dnn{2, 4, 1}, 2.0 / 12.0},
        {Additive{1, 1, 0}, 2.0 / 5.0},
        {Additive{2, inf, 0.1}, (2.0 * 2.0 * 0.9 - 0.1) / (2.0 * 2.0 + 1.0)},
        {ConvexWorst{6, 0.6}, 1.0 / 3.0},
        {ConvexAdapt{10, 2}, 0.4},
        {Ot{0.5, 4}, 1.0 / 3.0},
        {Ot{3, 4}, 0.5},
        {Classification{3, 1}, 0.2},
        {Classification{3, inf}, 0.25},
    };
    int bad = 0;
    for (const auto& r : rows)
      if (std::abs(application_exponents(r.app).exponent - r.expect) > 1e-15) ++bad;
    // gamma = inf reproduces the independent-data formulas bit for bit.
    for (double s : {0.5, 1.0, 3.0})
      for (double d : {1.0, 4.0, 10.0})
        if (application_exponents(Dnn{s, d, inf}).exponent != s / (d + 2.0 * s)) ++bad;
    for (double a : {1.5, 3.0, 7.0})
      if (application_exponents(Classification{a, inf}).exponent != 1.0 / (a + 1.0)) ++bad;
    // Large finite gamma approaches the limit.
    if (std::abs(application_exponents(Dnn{2, 4, 1e12}).exponent - 0.25) > 1e-12) ++bad;
    int boundary_flags = 0;
    for (const App& app : std::vector<App>{Ot{1, 4}, ConvexWorst{6, 0.5}, ConvexAdapt{12, 0.5}}) {
      try {
        application_exponents(app);
      } catch (const BoundaryError&) {
        ++boundary_flags;
      }
    }
    return Outcome{bad == 0 && boundary_flags == 3,
                   std::to_string(rows.size()) + " golden rows, " + std::to_string(bad) + " mismatches, " +
                       std::to_string(boundary_flags) + "/3 boundary flags"};
  });

  criterion("AC11", "Sinkhorn runtime exponent <= exact exponent - 0.2 (+-0.3)", true, [] {
    ot::CompareConfig cfg;
    cfg.dgp_x = {{"generator", "iid_uniform"}};
    cfg.dgp_y = {{"generator", "iid_uniform"}};
    cfg.d = 4;
    cfg.beta = 3.0;
    cfg.n_grid = {128, 181, 256, 362, 512, 724, 1024};
    cfg.replications = 3;
    cfg.base_seed = 1111;
    const auto rep = ot::compare_estimators(cfg);
    const double ex = rep.exact_runtime->slope, sk = rep.sinkhorn_runtime->slope;
    return Outcome{sk <= ex - 0.2 + 0.3, "exact " + f(ex, 3) + ", sinkhorn " + f(sk, 3) + ", schedule predicts " +
                                             f(rep.schedule_runtime_exponent, 3)};
  });

  std::printf("%d non-advisory criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
