#include "ccgeo/flows/ballbox.hpp"

#include <cmath>
#include <stdexcept>

namespace ccgeo::flows {

std::pair<double, double> loglog_slope(const std::vector<double>& x,
                                       const std::vector<double>& y) {
  const std::size_t m = x.size();
  if (m < 2 || y.size() != m) throw std::invalid_argument("need at least 2 samples for a slope");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / m;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = std::log(y[i]) - (intercept + slope * std::log(x[i]));
    rss += r * r;
  }
  const double se =
      (m > 2) ? std::sqrt(rss / (m - 2) / (sxx - sx * sx / m)) : 0.0;
  return {slope, se};
}

BallBoxFit ballbox_exponent_fit(const ExpChart& chart, int direction_index,
                                const DistanceOracle& oracle, double tau_min, double tau_max,
                                int count) {
  const int n = chart.structure().n();
  if (direction_index < 1 || direction_index > n)
    throw std::invalid_argument("direction index out of range (1-based)");
  if (!(0 < tau_min && tau_min < tau_max) || count < 2)
    throw std::invalid_argument("bad scale grid");

  BallBoxFit fit;
  fit.expected = 1.0 / chart.structure().degrees[direction_index - 1];

  for (int i = 0; i < count; ++i) {
    const double tau =
        tau_min * std::pow(tau_max / tau_min, static_cast<double>(i) / (count - 1));
    std::vector<double> t(n, 0.0);
    t[direction_index - 1] = tau;
    BallBoxRow row;
    row.tau = tau;
    const auto target = chart.exp(t);
    const auto est = oracle(chart.base(), target);
    if (est) {
      row.dist_lower = est->first;
      row.dist_upper = est->second;
      row.converged = true;
    } else {
      ++fit.dropped;
    }
    fit.rows.push_back(row);
  }

  std::vector<double> xs, ys;
  for (const auto& r : fit.rows) {
    if (r.converged && r.dist_upper > 0) {
      xs.push_back(r.tau);
      ys.push_back(r.dist_upper);
    }
  }
  if (xs.size() >= 2) {
    const auto [slope, se] = loglog_slope(xs, ys);
    fit.slope = slope;
    fit.stderr_slope = se;
  }
  return fit;
}

}  // namespace ccgeo::flows
