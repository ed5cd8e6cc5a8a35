#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mixlab/core/random.hpp"
#include "mixlab/empirical/isotonic.hpp"
#include "mixlab/empirical/monte_carlo.hpp"
#include "mixlab/empirical/slope_fit.hpp"
#include "mixlab/mixing/dgp.hpp"

namespace mixlab::empirical {

enum class Design { iid_uniform, fixed_grid };

// Regression Y_i = f_star(X_i) + xi_i with xi_i = scale * (V_i - E V) taken
// from a stationary sequence V. With the fixed grid the design points are
// x_i = (i + 1/2)/n in time order, so the dependence of the noise sequence
// reaches the estimator directly.
struct ErmSetup {
  Design design = Design::iid_uniform;
  mixing::Dgp noise;
  double noise_scale = 1.0;
  std::function<double(double)> f_star = [](double x) { return x; };
};

struct ErmPoint {
  double n;
  McEstimate error;  // squared empirical L2 error at the design points
};

struct ErmCurve {
  std::vector<ErmPoint> points;
  SlopeFit fit;
};

inline double erm_replica_error(const ErmSetup& s, std::int64_t n, std::uint64_t seed) {
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> x(nn);
  if (s.design == Design::fixed_grid) {
    for (std::size_t i = 0; i < nn; ++i) x[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  } else {
    Rng rng(derive_seed(seed, 1));
    for (auto& v : x) v = rng.uniform();
    std::sort(x.begin(), x.end());
  }
  const auto noise = s.noise.generate(n, derive_seed(seed, 2));
  const double centre = noise.marginal ? noise.marginal->mean() : 0.0;
  std::vector<double> y(nn), truth(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    truth[i] = s.f_star(x[i]);
    y[i] = truth[i] + s.noise_scale * (noise.values[i] - centre);
  }
  const auto fit = pava_isotonic(x, y);
  std::vector<double> sq(nn);
  for (std::size_t i = 0; i < nn; ++i) sq[i] = (fit[i] - truth[i]) * (fit[i] - truth[i]);
  return pairwise_sum(sq) / static_cast<double>(n);
}

inline ErmCurve erm_risk_curve(const ErmSetup& s, const std::vector<std::int64_t>& n_grid,
                               std::int64_t replications, std::uint64_t base_seed, int threads = 1) {
  if (replications < 2) throw InvalidArgument(kModule, "risk curve needs at least 2 replications");
  ErmCurve out;
  std::vector<SlopePoint> pts;
  for (std::int64_t n : n_grid) {
    if (n < 2) throw InvalidArgument(kModule, "risk curve needs n >= 2");
    std::vector<double> errs(static_cast<std::size_t>(replications));
    for_each_replica(replications, threads, [&](std::int64_t r) {
      errs[static_cast<std::size_t>(r)] = erm_replica_error(s, n, derive_seed(base_seed + static_cast<std::uint64_t>(r),
                                                                              static_cast<std::uint64_t>(n)));
    });
    auto est = summarize(std::move(errs));
    pts.push_back({static_cast<double>(n), est.mean, est.standard_error});
    out.points.push_back({static_cast<double>(n), std::move(est)});
  }
  bool positive = true;
  for (const auto& p : pts) positive = positive && p.estimate > 0.0;
  if (positive && pts.size() >= 4) out.fit = slope_fit(pts);
  return out;
}

}  // namespace mixlab::empirical
