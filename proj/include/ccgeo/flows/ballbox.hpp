#ifndef CCGEO_FLOWS_BALLBOX_HPP
#define CCGEO_FLOWS_BALLBOX_HPP

#include <functional>
#include <optional>

#include "ccgeo/flows/exp_chart.hpp"

namespace ccgeo::flows {

// Distance oracle: returns (lower, upper) estimates for d(x, y), or nothing
// when the estimate failed to converge at that pair.
using DistanceOracle = std::function<std::optional<std::pair<double, double>>(
    const std::vector<double>&, const std::vector<double>&)>;

struct BallBoxRow {
  double tau = 0.0;
  double dist_lower = 0.0;
  double dist_upper = 0.0;
  bool converged = false;
};

struct BallBoxFit {
  std::vector<BallBoxRow> rows;
  double slope = 0.0;       // least-squares slope of log d_upper vs log tau
  double stderr_slope = 0.0;
  double expected = 0.0;    // 1 / deg X_j
  int dropped = 0;
};

// Least-squares exponent fit of log d(zeta, Exp_zeta(tau e_j)) against
// log tau over a geometric grid of scales.
BallBoxFit ballbox_exponent_fit(const ExpChart& chart, int direction_index,
                                const DistanceOracle& oracle, double tau_min, double tau_max,
                                int count);

// Shared helper: least-squares slope and its standard error.
std::pair<double, double> loglog_slope(const std::vector<double>& x,
                                       const std::vector<double>& y);

}  // namespace ccgeo::flows

#endif
