#ifndef CCGEO_METRICS_ETA_DISTANCE_HPP
#define CCGEO_METRICS_ETA_DISTANCE_HPP

#include "ccgeo/metrics/eta_length.hpp"

namespace ccgeo::metrics {

struct EtaDistanceOptions {
  int budget = 6;  // maximum vertex count of candidate polygonal curves
  int restarts = 3;
  int descent_rounds = 3;
  int fast_samples = 16;   // per-segment samples inside the optimizer
  int final_samples = 64;  // certification of the best curve
  std::uint64_t seed = 0;
};

// Upper bound: multistart optimisation over polygonal curves (free vertices
// and time grid). Lower bound: the largest of
//   (2/3)|x-y|                    for |x-y| <= 4^{-eta},
//   |x-y|                        once the upper estimate is <= 1,
//   the root s* of (a - C s(s))/s + (b - C s(s))/s^eta = 1
// with a = |Pi_x^V (y-x)|, b = |Pi_x^W (y-x)|, s(s) = (s + s^eta)^2-padding
// driven by the projection modulus C(R); sharp in the flat model.
DistanceEstimate eta_distance(const EtaLengthEvaluator& eval, std::span<const double> x,
                              std::span<const double> y, const EtaDistanceOptions& opts = {});

// Lower-bound machinery, exposed for tests.
double eta_lower_bound(const EtaLengthEvaluator& eval, std::span<const double> x,
                       std::span<const double> y, double upper_estimate);

}  // namespace ccgeo::metrics

#endif
