#ifndef CCGEO_METRICS_TYPES_HPP
#define CCGEO_METRICS_TYPES_HPP

#include <limits>
#include <string>
#include <vector>

namespace ccgeo::metrics {

// Piecewise-linear curve with a free time grid on [0,1].
struct PolygonalCurve {
  std::vector<std::vector<double>> vertices;  // at least 2
  std::vector<double> times;                  // strictly increasing, 0 .. 1

  int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
  int segments() const { return static_cast<int>(vertices.size()) - 1; }
  std::vector<double> velocity(int segment) const;
  double lipschitz_bound() const;  // max segment speed
  void validate() const;           // throws on malformed data
};

// Piecewise-constant control path over the frame fields.
struct ControlPath {
  std::vector<std::vector<double>> controls;  // per segment, length k each
  std::vector<double> durations;              // positive
  std::vector<double> start;
};

// Certified interval around a distance value.
struct DistanceEstimate {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  bool converged = false;  // false: "upper-only, unconverged"
  double endpoint_gap = 0.0;
  std::string method;
  int restarts_used = 0;
  std::uint64_t seed = 0;

  // Witness curve: polygonal vertices/times for the eta metric, sampled
  // trajectory for the cc metric.
  std::vector<std::vector<double>> witness_vertices;
  std::vector<double> witness_times;

  double width() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
};

// Derived set of a polygonal curve at a time: a singleton away from the
// vertices, the convex segment between the adjacent velocities at a vertex.
struct DerivedSet {
  std::vector<std::vector<double>> extremes;  // 1 or 2 velocity vectors
  bool convex_segment = false;                // true: all convex combinations

  double diameter() const;
};

}  // namespace ccgeo::metrics

#endif
