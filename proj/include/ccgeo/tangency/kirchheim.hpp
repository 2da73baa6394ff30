#ifndef CCGEO_TANGENCY_KIRCHHEIM_HPP
#define CCGEO_TANGENCY_KIRCHHEIM_HPP

#include <functional>

#include "ccgeo/metrics/audits.hpp"

namespace ccgeo::tangency {

// Directional metric derivative MD(f,x)[u] = lim_r ||f(x+ru) - f(x)|| / r,
// estimated from difference quotients over a geometric radii grid.
struct MetricDifferentialEstimate {
  double value = 0.0;   // extrapolated quotient (mean of the finest radii)
  double spread = 0.0;  // max - min over the finest radii
  bool divergent = false;
  std::vector<double> radii;
  std::vector<double> quotients;
  int dropped = 0;
};

using SampledMap = std::function<std::vector<double>(std::span<const double>)>;

MetricDifferentialEstimate metric_differential(const SampledMap& f,
                                               const std::vector<double>& x,
                                               const std::vector<double>& direction,
                                               const metrics::MetricEstimator& metric,
                                               const std::vector<double>& radii,
                                               double divergence_cap = 3.0);

// Kirchheim seminorm sample on a quasi-uniform direction grid of S^{m-1}.
struct SeminormSample {
  std::vector<std::vector<double>> directions;
  std::vector<double> values;

  void validate() const;  // finite, non-negative, antipodal symmetry
};

// Direction grids: exact uniform circle for m=2, Fibonacci sphere for m=3,
// normalized quasi-random directions otherwise. Antipodes are included.
SeminormSample sphere_grid_seminorm(int m, int count,
                                    const std::function<double(std::span<const double>)>& norm);

// Metric Jacobian: m L^m(B_1) (integral over S^{m-1} of MD[u]^{-m})^{-1};
// with quasi-uniform equal weights this reduces to N / sum MD_i^{-m}.
// Exactly 0 when any sampled direction falls below the degenerate threshold,
// because the sphere integral then diverges.
double metric_jacobian(const SeminormSample& sample, double m,
                       double degenerate_threshold = 1e-9);

}  // namespace ccgeo::tangency

#endif
