#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mixlab/mixing/markov.hpp"
#include "mixlab/mixing/profile.hpp"
#include "mixlab/rates/orlicz.hpp"
#include "mixlab/rates/pivotal.hpp"

namespace mixlab::empirical {

struct VarianceReport {
  double lhs = 0.0;       // Var(sum_{i=1}^q h(X_i)), exact
  double rhs = 0.0;       // q ||h||_phi^2 (c_phi^2 + 2 Lambda(q))
  double orlicz_norm = 0.0;
  double lambda = 0.0;
  bool holds = false;
};

// Exact audit of the block variance bound on a stationary finite chain.
inline VarianceReport verify_variance_bound(const mixing::Matrix& p, const std::vector<double>& h,
                                            std::int64_t q, double r) {
  if (!(r > 2.0)) throw InvalidArgument(kModule, "variance bound needs r > 2");
  if (q < 1) throw InvalidArgument(kModule, "variance bound needs q >= 1");
  mixing::validate_transition(p);
  if (static_cast<Eigen::Index>(h.size()) != p.rows())
    throw InvalidArgument(kModule, "h must have one value per state");
  const mixing::Vector pi = mixing::stationary_distribution(p);
  const Eigen::Map<const mixing::Vector> hv(h.data(), static_cast<Eigen::Index>(h.size()));
  const mixing::Vector hc = hv.array() - pi.dot(hv);
  // Cov(h(X_0), h(X_k)) = sum_x pi(x) hc(x) (P^k hc)(x).
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(q));
  mixing::Vector pk_h = hc;
  terms.push_back(static_cast<double>(q) * pi.dot(hc.cwiseProduct(hc)));
  for (std::int64_t k = 1; k < q; ++k) {
    pk_h = p * pk_h;
    terms.push_back(2.0 * static_cast<double>(q - k) * pi.dot(hc.cwiseProduct(pk_h)));
  }
  VarianceReport rep;
  rep.lhs = pairwise_sum(terms);
  const std::vector<double> w(pi.data(), pi.data() + pi.size());
  rep.orlicz_norm = rates::orlicz_norm_weighted(h, w, r);
  const auto profile = mixing::MixingProfile::exact_markov(p, pi);
  rep.lambda = rates::lambda_phi_beta(profile, q, r);
  const double c = rates::c_phi(r);
  rep.rhs = static_cast<double>(q) * rep.orlicz_norm * rep.orlicz_norm * (c * c + 2.0 * rep.lambda);
  rep.holds = rep.lhs <= rep.rhs;
  return rep;
}

}  // namespace mixlab::empirical
