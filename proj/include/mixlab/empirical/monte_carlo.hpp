#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <span>
#include <thread>
#include <vector>

#include "mixlab/core/numeric.hpp"
#include "mixlab/empirical/statistics.hpp"
#include "mixlab/mixing/dgp.hpp"

namespace mixlab::empirical {

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::vector<double> replicas;  // replica r at index r
};

// Jackknife standard error of the mean. Leave-one-out means are formed from
// the pairwise total, so the result depends only on the replica values.
inline double jackknife_se(std::span<const double> xs) {
  const std::size_t r = xs.size();
  if (r < 2) return 0.0;
  const double total = pairwise_sum(xs);
  const double rd = static_cast<double>(r);
  std::vector<double> loo(r);
  for (std::size_t i = 0; i < r; ++i) loo[i] = (total - xs[i]) / (rd - 1.0);
  const double bar = pairwise_sum(loo) / rd;
  std::vector<double> sq(r);
  for (std::size_t i = 0; i < r; ++i) sq[i] = (loo[i] - bar) * (loo[i] - bar);
  return std::sqrt((rd - 1.0) / rd * pairwise_sum(sq));
}

inline McEstimate summarize(std::vector<double> replicas) {
  McEstimate out;
  out.mean = pairwise_sum(replicas) / static_cast<double>(replicas.size());
  out.standard_error = jackknife_se(replicas);
  out.replicas = std::move(replicas);
  return out;
}

// Runs body(r) for r in [0, count) on up to `threads` workers; body writes its
// own slot, so the outcome does not depend on scheduling.
template <typename Body>
void for_each_replica(std::int64_t count, int threads, Body body) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::int64_t>(count, 1))));
  if (threads == 1) {
    for (std::int64_t r = 0; r < count; ++r) body(r);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::int64_t r = t; r < count; r += threads) body(r);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// E sup |G_n| by simulation: replica r draws with seed base_seed + r.
inline McEstimate mc_sup_expectation(const mixing::Dgp& dgp, Statistic stat, std::int64_t n,
                                     std::int64_t replications, std::uint64_t base_seed, int threads = 1) {
  if (replications < 30) throw InvalidArgument(kModule, "Monte Carlo needs at least 30 replications");
  if (n < 1) throw InvalidArgument(kModule, "Monte Carlo needs n >= 1");
  std::vector<double> vals(static_cast<std::size_t>(replications));
  for_each_replica(replications, threads, [&](std::int64_t r) {
    try {
      const auto s = dgp.generate(n, base_seed + static_cast<std::uint64_t>(r));
      const double v = gn_stat(s, stat);
      if (!std::isfinite(v)) throw NumericalError(kModule, "non-finite statistic");
      vals[static_cast<std::size_t>(r)] = v;
    } catch (const Error& e) {
      throw NumericalError(kModule, "replica " + std::to_string(r) + " failed: " + e.what());
    }
  });
  return summarize(std::move(vals));
}

}  // namespace mixlab::empirical
