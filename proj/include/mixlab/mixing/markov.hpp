#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mixlab/core/error.hpp"

namespace mixlab::mixing {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kRowSumTol = 1e-12;
inline constexpr double kStationaryTol = 1e-10;

inline void validate_transition(const Matrix& p) {
  if (p.rows() < 1 || p.rows() != p.cols())
    throw InvalidArgument("mixing_dgp", "transition matrix must be square and nonempty");
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      if (!(p(i, j) >= 0.0))
        throw InvalidArgument("mixing_dgp", "transition matrix has a negative entry");
      s += p(i, j);
    }
    if (std::abs(s - 1.0) > kRowSumTol)
      throw InvalidArgument("mixing_dgp", "transition matrix row " + std::to_string(i) +
                                              " does not sum to 1");
  }
}

inline void validate_stationary(const Matrix& p, const Vector& pi) {
  if (pi.size() != p.rows())
    throw InvalidArgument("mixing_dgp", "stationary vector has the wrong length");
  if ((pi.array() < 0.0).any() || std::abs(pi.sum() - 1.0) > kStationaryTol)
    throw InvalidArgument("mixing_dgp", "stationary vector is not a distribution");
  const Vector moved = (pi.transpose() * p).transpose();
  if ((moved - pi).lpNorm<Eigen::Infinity>() > kStationaryTol)
    throw InvalidArgument("mixing_dgp", "stationary vector does not satisfy pi P = pi");
}

// Stationary distribution by power iteration from an asymmetric start
// (weights proportional to 1/(i+1)). Chains whose iterates fail to settle,
// typically periodic ones, are rejected. For chains with several closed
// classes the limit from this start is returned.
inline Vector stationary_distribution(const Matrix& p, int max_iter = 200000, double tol = 1e-15) {
  validate_transition(p);
  const Eigen::Index m = p.rows();
  Vector pi(m);
  for (Eigen::Index i = 0; i < m; ++i) pi(i) = 1.0 / static_cast<double>(i + 1);
  pi /= pi.sum();
  const Matrix pt = p.transpose();
  for (int it = 0; it < max_iter; ++it) {
    Vector next = pt * pi;
    next /= next.sum();
    const double delta = (next - pi).lpNorm<1>();
    pi = std::move(next);
    if (delta <= tol) {
      validate_stationary(p, pi);
      return pi;
    }
  }
  throw NumericalError("mixing_dgp",
                       "power iteration did not converge: chain has no unique limiting "
                       "distribution (reducible or periodic)");
}

inline Matrix matrix_power(const Matrix& p, std::int64_t q) {
  Matrix result = Matrix::Identity(p.rows(), p.cols());
  Matrix base = p;
  while (q > 0) {
    if (q & 1) result = result * base;
    q >>= 1;
    if (q > 0) base = base * base;
  }
  return result;
}

// Sum over x of pi(x) * TV(P^q(x, .), pi). For a stationary Markov chain the
// past/future coefficient at gap q reduces to this two-coordinate quantity.
inline double beta_from_power(const Matrix& pq, const Vector& pi) {
  double beta = 0.0;
  for (Eigen::Index x = 0; x < pq.rows(); ++x) {
    double tv = 0.0;
    for (Eigen::Index y = 0; y < pq.cols(); ++y) tv += std::abs(pq(x, y) - pi(y));
    beta += pi(x) * 0.5 * tv;
  }
  return std::clamp(beta, 0.0, 1.0);
}

inline double exact_beta_markov(const Matrix& p, const Vector& pi, std::int64_t q) {
  if (q < 0) throw InvalidArgument("mixing_dgp", "lag q must be nonnegative");
  validate_transition(p);
  validate_stationary(p, pi);
  if (q == 0) return 1.0;
  return beta_from_power(matrix_power(p, q), pi);
}

// Coefficients for q = 0..q_max in one pass of successive multiplication.
inline std::vector<double> exact_beta_markov_sequence(const Matrix& p, const Vector& pi,
                                                      std::int64_t q_max) {
  if (q_max < 0) throw InvalidArgument("mixing_dgp", "lag q must be nonnegative");
  validate_transition(p);
  validate_stationary(p, pi);
  std::vector<double> out{1.0};
  Matrix pq = Matrix::Identity(p.rows(), p.cols());
  for (std::int64_t q = 1; q <= q_max; ++q) {
    pq = pq * p;
    out.push_back(beta_from_power(pq, pi));
  }
  return out;
}

// Two-coordinate coefficient TV(law(f(S_0), f(S_q)), law(f(S_0)) x law(f(S_q)))
// of the observed values f(state). This is what a binning estimator targets;
// it never exceeds the chain coefficient and equals it when f is injective.
inline double exact_pair_beta_markov(const Matrix& p, const Vector& pi,
                                     const std::vector<double>& state_values, std::int64_t q) {
  if (q < 0) throw InvalidArgument("mixing_dgp", "lag q must be nonnegative");
  validate_transition(p);
  validate_stationary(p, pi);
  if (static_cast<Eigen::Index>(state_values.size()) != p.rows())
    throw InvalidArgument("mixing_dgp", "state_values length must match the chain");
  if (q == 0) return 1.0;
  std::map<double, int> index;
  for (double v : state_values) index.emplace(v, 0);
  int k = 0;
  for (auto& [v, idx] : index) idx = k++;
  std::vector<int> cls(state_values.size());
  for (std::size_t s = 0; s < state_values.size(); ++s) cls[s] = index.at(state_values[s]);

  const Matrix pq = matrix_power(p, q);
  Matrix joint = Matrix::Zero(k, k);
  Vector marg = Vector::Zero(k);
  for (Eigen::Index x = 0; x < pq.rows(); ++x) {
    marg(cls[x]) += pi(x);
    for (Eigen::Index y = 0; y < pq.cols(); ++y) joint(cls[x], cls[y]) += pi(x) * pq(x, y);
  }
  double tv = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) tv += std::abs(joint(a, b) - marg(a) * marg(b));
  return std::clamp(0.5 * tv, 0.0, 1.0);
}

}  // namespace mixlab::mixing
