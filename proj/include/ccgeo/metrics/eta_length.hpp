#ifndef CCGEO_METRICS_ETA_LENGTH_HPP
#define CCGEO_METRICS_ETA_LENGTH_HPP

#include <Eigen/Dense>
#include <memory>

#include "ccgeo/metrics/types.hpp"
#include "ccgeo/structures/structure.hpp"

namespace ccgeo::metrics {

using structures::ComplementedStructure;

struct EtaLengthBracket {
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return upper - lower; }
};

// Evaluator for the sup-type anisotropic length
//   l_eta(gamma) = sup_t max_{v in D gamma(t)} |Pi^V v| + |Pi^W v|^{1/eta}.
// Per-segment suprema are sampled and padded with first/second order moduli
// of the projection field, so the returned bracket honestly contains the sup.
// Vertex contributions use the convex derived segment on a refined grid.
class EtaLengthEvaluator {
 public:
  EtaLengthEvaluator(const ComplementedStructure& S, double eta, int segment_samples = 64);

  double eta() const { return eta_; }
  const ComplementedStructure& structure() const { return *S_; }
  // First-order modulus C(R) of x -> Pi_x over the working box (cached).
  double projection_modulus_c() const { return c1_; }
  double second_order_modulus() const { return c2_; }

  EtaLengthBracket evaluate(const PolygonalCurve& gamma) const;
  // Cheap variant for optimizer inner loops.
  EtaLengthBracket evaluate_fast(const PolygonalCurve& gamma, int samples) const;

  // Gauge value |Pi_x^V d| + |Pi_x^W d|^{1/eta}.
  double gauge(std::span<const double> x, std::span<const double> d) const;

  // Projection matrices at a float point (dense LU each call; n is small).
  void projections(std::span<const double> x, Eigen::MatrixXd* pv, Eigen::MatrixXd* pw) const;

 private:
  struct SegmentCost;
  EtaLengthBracket evaluate_impl(const PolygonalCurve& gamma, int samples) const;

  const ComplementedStructure* S_;
  double eta_;
  int segment_samples_;
  double c1_ = 0.0;  // first-order modulus over the working box, with safety
  double c2_ = 0.0;  // sampled second-difference modulus, with safety
};

}  // namespace ccgeo::metrics

#endif
