#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixlab/empirical/monte_carlo.hpp"
#include "mixlab/empirical/slope_fit.hpp"
#include "mixlab/ot/assignment.hpp"
#include "mixlab/ot/sinkhorn.hpp"
#include "mixlab/rates/applications.hpp"

namespace mixlab::ot {

struct CompareConfig {
  nlohmann::json dgp_x;  // scalar DGP blocks; coordinates are independent copies
  nlohmann::json dgp_y;
  int d = 4;
  double beta = 3.0;  // decay exponent used to pick the schedule
  std::vector<std::int64_t> n_grid;
  std::int64_t replications = 1;
  std::uint64_t base_seed = 0;
  std::optional<double> eps_override;
  std::optional<std::int64_t> k_override;
};

struct CompareRow {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double eps = 0.0;
  std::string regime;
  empirical::McEstimate exact;
  empirical::McEstimate sinkhorn;
  double exact_seconds = 0.0;     // median wall-clock per replica
  double sinkhorn_seconds = 0.0;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  std::optional<empirical::SlopeFit> exact_runtime;
  std::optional<empirical::SlopeFit> sinkhorn_runtime;
  double schedule_runtime_exponent = 0.0;  // 2 + k exponent
  std::string regime;
};

namespace detail {
inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}
}  // namespace detail

// For each n: draw X and Y, compute exact W2^2 (assignment) and the Sinkhorn
// divergence at the schedule (k_n, eps_n), timing both.
inline CompareReport compare_estimators(const CompareConfig& cfg) {
  if (cfg.d < 2) throw InvalidArgument(kModule, "comparison harness needs d >= 2");
  if (cfg.replications < 1) throw InvalidArgument(kModule, "comparison harness needs replications >= 1");
  const auto dx = mixing::Dgp::from_json(cfg.dgp_x);
  const auto dy = mixing::Dgp::from_json(cfg.dgp_y);
  using clock = std::chrono::steady_clock;
  CompareReport rep;
  std::vector<empirical::SlopePoint> te, ts;
  for (std::int64_t n : cfg.n_grid) {
    if (n < 2) throw InvalidArgument(kModule, "comparison harness needs n >= 2");
    CompareRow row;
    row.n = n;
    if (cfg.eps_override && cfg.k_override) {
      row.eps = *cfg.eps_override;
      row.k = *cfg.k_override;
      row.regime = "override";
    } else {
      const auto sch = rates::apps::ot_schedule(cfg.beta, cfg.d, static_cast<double>(n));
      row.eps = cfg.eps_override.value_or(sch.epsilon);
      row.k = cfg.k_override.value_or(sch.k);
      row.regime = sch.regime;
      rep.schedule_runtime_exponent = sch.runtime_exponent;
      rep.regime = sch.regime;
    }
    std::vector<double> ex, sk, ext, skt;
    for (std::int64_t r = 0; r < cfg.replications; ++r) {
      const std::uint64_t seed = derive_seed(cfg.base_seed + static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(n));
      const Cloud x = cloud_from_dgp(dx, n, cfg.d, derive_seed(seed, 1));
      const Cloud y = cloud_from_dgp(dy, n, cfg.d, derive_seed(seed, 2));
      auto t0 = clock::now();
      ex.push_back(exact_w2_assignment(x, y));
      auto t1 = clock::now();
      sk.push_back(sinkhorn_divergence(x, y, row.eps, row.k));
      auto t2 = clock::now();
      ext.push_back(std::chrono::duration<double>(t1 - t0).count());
      skt.push_back(std::chrono::duration<double>(t2 - t1).count());
    }
    row.exact = empirical::summarize(ex);
    row.sinkhorn = empirical::summarize(sk);
    row.exact_seconds = detail::median(ext);
    row.sinkhorn_seconds = detail::median(skt);
    te.push_back({static_cast<double>(n), std::max(row.exact_seconds, 1e-9)});
    ts.push_back({static_cast<double>(n), std::max(row.sinkhorn_seconds, 1e-9)});
    rep.rows.push_back(std::move(row));
  }
  if (te.size() >= 4) {
    rep.exact_runtime = empirical::slope_fit(te);
    rep.sinkhorn_runtime = empirical::slope_fit(ts);
  }
  return rep;
}

}  // namespace mixlab::ot
