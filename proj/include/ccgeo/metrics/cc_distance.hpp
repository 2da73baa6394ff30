#ifndef CCGEO_METRICS_CC_DISTANCE_HPP
#define CCGEO_METRICS_CC_DISTANCE_HPP

#include "ccgeo/flows/flow.hpp"
#include "ccgeo/metrics/types.hpp"

namespace ccgeo::metrics {

using structures::ComplementedStructure;

struct CcDistanceOptions {
  int segments = 12;        // piecewise-constant control segments
  int rk_steps = 6;         // RK4 steps per segment
  int restarts = 4;
  int descent_iterations = 60;
  double endpoint_tol = 1e-6;
  std::uint64_t seed = 0;
};

// Carnot-Caratheodory distance estimator. Upper bound: Euclidean arc length
// of the best horizontal control path (piecewise-constant controls, shooting
// with a Gauss-Newton endpoint projection, then length descent in the
// endpoint-preserving null space). Runs are accepted only when the endpoint
// gap is at most endpoint_tol. Lower bound: |x - y| (horizontal curves have
// ambient Euclidean length at least the straight-line distance).
DistanceEstimate cc_distance(const ComplementedStructure& S, std::span<const double> x,
                             std::span<const double> y, const CcDistanceOptions& opts = {});

// Control-leg sequence approximating the flow of `amount` times the field a
// recipe prescribes (group-commutator maneuver); used to seed the optimizer
// for targets with large complement components.
std::vector<std::vector<double>> maneuver_controls(const structures::Recipe& recipe, int k,
                                                   double amount);

}  // namespace ccgeo::metrics

#endif
