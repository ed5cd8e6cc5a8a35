#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "mixlab/core/numeric.hpp"
#include "mixlab/ot/cloud.hpp"

namespace mixlab::ot {

struct Assignment {
  std::vector<int> col_of_row;
  double cost = 0.0;
};

// Shortest augmenting path assignment with row/column potentials; O(n^3).
// Rows are inserted one at a time and a Dijkstra-like sweep over columns finds
// the cheapest augmenting path in reduced costs.
inline Assignment solve_assignment(const CostMatrix& c) {
  const int n = static_cast<int>(c.rows());
  if (n == 0 || c.cols() != c.rows()) throw InvalidArgument(kModule, "assignment needs a nonempty square cost");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> pu(n + 1, 0.0), pv(n + 1, 0.0), minv(n + 1);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);  // match[j]: row assigned to column j (1-based)
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c(i0 - 1, j - 1) - pu[i0] - pv[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          pu[match[j]] += delta;
          pv[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Assignment a;
  a.col_of_row.assign(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j) a.col_of_row[static_cast<std::size_t>(match[j] - 1)] = j - 1;
  // Sum the chosen entries directly rather than trusting the potentials.
  std::vector<double> picked(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) picked[static_cast<std::size_t>(i)] = c(i, a.col_of_row[static_cast<std::size_t>(i)]);
  std::sort(picked.begin(), picked.end());
  a.cost = pairwise_sum(picked);
  return a;
}

// Assignment-based W2^2 between equal-size clouds with uniform weights.
inline double exact_w2_assignment(const Cloud& x, const Cloud& y) {
  if (x.rows() != y.rows()) throw InvalidArgument(kModule, "exact W2 needs equal cloud sizes");
  return solve_assignment(squared_cost(x, y)).cost / static_cast<double>(x.rows());
}

// Sorted matching; optimal on the line for the squared cost.
inline double exact_w2_sorted_1d(const Cloud& x, const Cloud& y) {
  if (x.rows() != y.rows()) throw InvalidArgument(kModule, "exact W2 needs equal cloud sizes");
  if (x.cols() != 1 || y.cols() != 1) throw InvalidArgument(kModule, "sorted matching needs 1-D clouds");
  std::vector<double> a(x.data(), x.data() + x.rows()), b(y.data(), y.data() + y.rows());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> sq(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) sq[i] = (a[i] - b[i]) * (a[i] - b[i]);
  std::sort(sq.begin(), sq.end());
  return pairwise_sum(sq) / static_cast<double>(a.size());
}

inline double exact_w2(const Cloud& x, const Cloud& y) {
  if (x.rows() != y.rows()) throw InvalidArgument(kModule, "exact W2 needs equal cloud sizes");
  if (x.cols() != y.cols()) throw InvalidArgument(kModule, "point clouds must share a dimension");
  if (x.cols() == 1) return exact_w2_sorted_1d(x, y);
  return exact_w2_assignment(x, y);
}

}  // namespace mixlab::ot
