#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "mixlab/core/error.hpp"
#include "mixlab/mixing/sample.hpp"

namespace mixlab::mixing {

enum class BinningMode {
  // m cells of (nearly) equal counts by rank; ties are ordered by time index.
  equal_frequency,
  // One cell per distinct observed value; suited to finite-state chains.
  distinct_values,
};

// Plug-in two-coordinate coefficient from a binned contingency table of the
// pairs (X_t, X_{t+q}). It only sees the coarse sigma-fields generated by
// the cells, so it is a lower-bound proxy for the full coefficient.
inline double estimate_beta_binning(const std::vector<double>& x, std::int64_t q, int m_bins,
                                    BinningMode mode = BinningMode::equal_frequency) {
  const auto n = static_cast<std::int64_t>(x.size());
  if (m_bins < 1) throw InvalidArgument("mixing_dgp", "binning needs at least one cell");
  if (q < 0) throw InvalidArgument("mixing_dgp", "lag q must be nonnegative");
  const std::int64_t required = 10LL * m_bins * m_bins;
  if (n < required)
    throw InvalidArgument("mixing_dgp", "binning estimate with " + std::to_string(m_bins) +
                                            " cells needs n >= " + std::to_string(required) +
                                            " observations, got " + std::to_string(n));
  if (2 * q >= n) throw InvalidArgument("mixing_dgp", "lag q must be below n/2");
  if (q == 0) return 1.0;

  std::vector<int> cell(static_cast<std::size_t>(n));
  int cells = m_bins;
  if (mode == BinningMode::equal_frequency) {
    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&x](std::int64_t a, std::int64_t b) { return x[a] < x[b]; });
    for (std::int64_t rank = 0; rank < n; ++rank)
      cell[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])] =
          static_cast<int>(rank * m_bins / n);
  } else {
    std::map<double, int> index;
    for (double v : x) index.emplace(v, 0);
    if (static_cast<int>(index.size()) > m_bins)
      throw InvalidArgument("mixing_dgp", "sample has more distinct values than cells");
    int k = 0;
    for (auto& [v, i] : index) i = k++;
    cells = k;
    for (std::int64_t t = 0; t < n; ++t)
      cell[static_cast<std::size_t>(t)] = index.at(x[static_cast<std::size_t>(t)]);
  }

  const std::int64_t pairs = n - q;
  std::vector<double> joint(static_cast<std::size_t>(cells * cells), 0.0);
  std::vector<double> first(static_cast<std::size_t>(cells), 0.0), second(first);
  for (std::int64_t t = 0; t < pairs; ++t) {
    const int a = cell[static_cast<std::size_t>(t)];
    const int b = cell[static_cast<std::size_t>(t + q)];
    joint[static_cast<std::size_t>(a * cells + b)] += 1.0;
    first[static_cast<std::size_t>(a)] += 1.0;
    second[static_cast<std::size_t>(b)] += 1.0;
  }
  const double inv = 1.0 / static_cast<double>(pairs);
  double tv = 0.0;
  for (int a = 0; a < cells; ++a)
    for (int b = 0; b < cells; ++b)
      tv += std::abs(joint[static_cast<std::size_t>(a * cells + b)] * inv -
                     first[static_cast<std::size_t>(a)] * inv * second[static_cast<std::size_t>(b)] * inv);
  return std::clamp(0.5 * tv, 0.0, 1.0);
}

inline double estimate_beta_binning(const SequenceSample& s, std::int64_t q, int m_bins,
                                    BinningMode mode = BinningMode::equal_frequency) {
  return estimate_beta_binning(s.values, q, m_bins, mode);
}

}  // namespace mixlab::mixing
