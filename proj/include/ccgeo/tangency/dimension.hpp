#ifndef CCGEO_TANGENCY_DIMENSION_HPP
#define CCGEO_TANGENCY_DIMENSION_HPP

#include <vector>

#include "ccgeo/metrics/audits.hpp"

namespace ccgeo::tangency {

struct BoxDimensionEstimate {
  double dimension = 0.0;
  double confidence = 0.0;  // two standard errors of the slope
  std::vector<double> scales;
  std::vector<std::size_t> counts;
};

// Least-squares slope of log N(eps) against log(1/eps) over the scale grid.
BoxDimensionEstimate box_counting_dimension(const std::vector<std::vector<double>>& points,
                                            const std::vector<double>& scales);

struct PremeasureEstimate {
  double value = 0.0;   // sum of diam^m over the greedy cover
  int covers = 0;
  int dropped_pairs = 0;
  double delta_cov = 0.0;
};

// Greedy covering by metric balls of diameter <= delta_cov (centers walk the
// lexicographically sorted points); upper estimate of the delta_cov-premeasure
// up to the greedy factor.
PremeasureEstimate hausdorff_premeasure(const std::vector<std::vector<double>>& points,
                                        const metrics::MetricEstimator& metric, double m,
                                        double delta_cov);

}  // namespace ccgeo::tangency

#endif
