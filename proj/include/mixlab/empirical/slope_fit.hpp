#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "mixlab/empirical/statistics.hpp"

namespace mixlab::empirical {

struct SlopePoint {
  double n;
  double estimate;
  double standard_error = 0.0;
};

struct SlopeFit {
  std::vector<double> n_grid;
  std::vector<double> estimates;
  std::vector<double> standard_errors;
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double r_squared = 1.0;
};

// Ordinary least squares of log(estimate) on log(n). The reported slope
// standard error is the larger of the residual-based value and the value
// propagated from the per-point standard errors (delta method on the logs).
inline SlopeFit slope_fit(const std::vector<SlopePoint>& pts) {
  if (pts.size() < 4) throw InvalidArgument(kModule, "slope fit needs at least 4 points");
  SlopeFit f;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i].estimate > 0.0)) throw InvalidArgument(kModule, "slope fit needs positive estimates");
    if (i > 0 && !(pts[i].n > pts[i - 1].n)) throw InvalidArgument(kModule, "slope fit needs increasing n");
    f.n_grid.push_back(pts[i].n);
    f.estimates.push_back(pts[i].estimate);
    f.standard_errors.push_back(pts[i].standard_error);
  }
  const std::size_t k = pts.size();
  const double kd = static_cast<double>(k);
  std::vector<double> x(k), y(k);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    x[i] = std::log(pts[i].n);
    y[i] = std::log(pts[i].estimate);
    mx += x[i];
    my += y[i];
  }
  mx /= kd;
  my /= kd;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double e = y[i] - f.intercept - f.slope * x[i];
    rss += e * e;
  }
  f.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  const double resid_se = std::sqrt(rss / (kd - 2.0) / sxx);
  double prop_var = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double w = (x[i] - mx) / sxx;
    const double rel = pts[i].standard_error / pts[i].estimate;
    prop_var += w * w * rel * rel;
  }
  f.slope_se = std::max({resid_se, std::sqrt(prop_var), std::numeric_limits<double>::epsilon()});
  return f;
}

}  // namespace mixlab::empirical
