#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mixlab/core/error.hpp"
#include "mixlab/core/random.hpp"
#include "mixlab/mixing/dgp.hpp"

namespace mixlab::ot {

inline constexpr const char* kModule = "ot_estimators";

// Point cloud: one point per row.
using Cloud = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CostMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline CostMatrix squared_cost(const Cloud& x, const Cloud& y) {
  if (x.rows() == 0 || y.rows() == 0) throw InvalidArgument(kModule, "point clouds must be nonempty");
  if (x.cols() != y.cols()) throw InvalidArgument(kModule, "point clouds must share a dimension");
  CostMatrix c(x.rows(), y.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < y.rows(); ++j) c(i, j) = (x.row(i) - y.row(j)).squaredNorm();
  return c;
}

inline Cloud cloud_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidArgument(kModule, "point clouds must be nonempty");
  Cloud c(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) throw InvalidArgument(kModule, "ragged point cloud");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return c;
}

// n points in R^d whose coordinates are d independent copies of a stationary
// scalar sequence; coordinate c draws with stream seed derive_seed(seed, c).
inline Cloud cloud_from_dgp(const mixing::Dgp& dgp, std::int64_t n, int d, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument(kModule, "dimension must be >= 1");
  Cloud c(n, d);
  for (int k = 0; k < d; ++k) {
    const auto s = dgp.generate(n, derive_seed(seed, static_cast<std::uint64_t>(k)));
    for (std::int64_t i = 0; i < n; ++i) c(i, k) = s.values[static_cast<std::size_t>(i)];
  }
  return c;
}

}  // namespace mixlab::ot
