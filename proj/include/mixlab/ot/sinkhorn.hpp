#pragma once

#include <cmath>
#include <cstdint>

#include "mixlab/ot/cloud.hpp"

namespace mixlab::ot {

struct SinkhornState {
  Eigen::VectorXd u;  // length m
  Eigen::VectorXd v;  // length n
  double eps = 1.0;
  std::int64_t k = 0;
};

inline SinkhornState sinkhorn_init(const CostMatrix& c, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument(kModule, "Sinkhorn needs eps > 0");
  if (c.rows() == 0 || c.cols() == 0) throw InvalidArgument(kModule, "Sinkhorn needs nonempty clouds");
  SinkhornState s;
  s.u = Eigen::VectorXd::Zero(c.rows());
  s.v = Eigen::VectorXd::Zero(c.cols());
  s.eps = eps;
  return s;
}

// One Sinkhorn step in the log domain:
//   u_i = -eps log( n^{-1} sum_j exp((v_j - C_ij)/eps) ),
//   v_j = -eps log( m^{-1} sum_i exp((u_i - C_ij)/eps) )   with the new u.
inline void sinkhorn_iterate(const CostMatrix& c, SinkhornState& s) {
  const Eigen::Index m = c.rows(), n = c.cols();
  const double eps = s.eps;
  const double log_n = std::log(static_cast<double>(n)), log_m = std::log(static_cast<double>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) mx = std::max(mx, s.v(j) - c(i, j));
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) acc += std::exp((s.v(j) - c(i, j) - mx) / eps);
    s.u(i) = -(mx + eps * (std::log(acc) - log_n));
  }
  // Column pass: accumulate row by row to keep memory access contiguous.
  Eigen::VectorXd mx = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) mx(j) = std::max(mx(j), s.u(i) - c(i, j));
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) acc(j) += std::exp((s.u(i) - c(i, j) - mx(j)) / eps);
  for (Eigen::Index j = 0; j < n; ++j) s.v(j) = -(mx(j) + eps * (std::log(acc(j)) - log_m));
  ++s.k;
  if (!s.u.allFinite() || !s.v.allFinite())
    throw NumericalError(kModule, "Sinkhorn potentials became non-finite at iteration " + std::to_string(s.k));
}

// Dual objective m^{-1} sum u + n^{-1} sum v.
inline double sinkhorn_objective(const SinkhornState& s) { return s.u.mean() + s.v.mean(); }

inline SinkhornState sinkhorn_run(const CostMatrix& c, double eps, std::int64_t k) {
  if (k < 1) throw InvalidArgument(kModule, "Sinkhorn needs k >= 1 iterations");
  auto s = sinkhorn_init(c, eps);
  for (std::int64_t t = 0; t < k; ++t) sinkhorn_iterate(c, s);
  return s;
}

inline double t_eps_k(const Cloud& x, const Cloud& y, double eps, std::int64_t k) {
  return sinkhorn_objective(sinkhorn_run(squared_cost(x, y), eps, k));
}

// T(X,Y) - (T(X,X) + T(Y,Y))/2 with one (eps, k) for all three terms.
inline double sinkhorn_divergence(const Cloud& x, const Cloud& y, double eps, std::int64_t k) {
  const double txy = t_eps_k(x, y, eps, k);
  const double txx = t_eps_k(x, x, eps, k);
  const double tyy = t_eps_k(y, y, eps, k);
  return txy - 0.5 * (txx + tyy);
}

}  // namespace mixlab::ot
