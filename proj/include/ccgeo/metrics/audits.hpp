#ifndef CCGEO_METRICS_AUDITS_HPP
#define CCGEO_METRICS_AUDITS_HPP

#include <memory>
#include <optional>

#include "ccgeo/metrics/cc_distance.hpp"
#include "ccgeo/metrics/eta_distance.hpp"

namespace ccgeo::metrics {

// Common facade over the distance estimators (and the exact Euclidean
// metric, which the audits use as a deliberately failing reference).
class MetricEstimator {
 public:
  virtual ~MetricEstimator() = default;
  virtual std::string name() const = 0;
  virtual std::optional<DistanceEstimate> estimate(std::span<const double> x,
                                                   std::span<const double> y) const = 0;
};

class EuclideanMetric final : public MetricEstimator {
 public:
  std::string name() const override { return "euclidean"; }
  std::optional<DistanceEstimate> estimate(std::span<const double> x,
                                           std::span<const double> y) const override;
};

class CcMetric final : public MetricEstimator {
 public:
  CcMetric(const ComplementedStructure& S, CcDistanceOptions opts = {});
  std::string name() const override { return "cc"; }
  std::optional<DistanceEstimate> estimate(std::span<const double> x,
                                           std::span<const double> y) const override;

 private:
  const ComplementedStructure* S_;
  CcDistanceOptions opts_;
};

class EtaBoxMetric final : public MetricEstimator {
 public:
  EtaBoxMetric(const ComplementedStructure& S, double eta, EtaDistanceOptions opts = {});
  std::string name() const override { return "eta-box"; }
  double eta() const { return eval_->eta(); }
  const EtaLengthEvaluator& evaluator() const { return *eval_; }
  std::optional<DistanceEstimate> estimate(std::span<const double> x,
                                           std::span<const double> y) const override;

 private:
  std::shared_ptr<EtaLengthEvaluator> eval_;
  EtaDistanceOptions opts_;
};

// Squeezedness audit: for sampled pairs, the gauge
// g(x,y) = |Pi_x^V (y-x)| + |Pi_x^W (y-x)|^{1/eta} is compared with the
// estimated metric; per dyadic gauge band the report carries the smallest C
// making both squeezing inequalities hold over the band's sample.
struct SqueezeBand {
  double band_lo = 0.0;
  double band_hi = 0.0;
  double fitted_c = 0.0;
  int pairs_used = 0;
};

struct SqueezeReport {
  std::vector<SqueezeBand> bands;
  int dropped = 0;  // unconverged estimates
  double modulus_c = 0.0;
  std::uint64_t seed = 0;

  double max_band_ratio() const;  // max fitted_c / min fitted_c over nonempty bands
};

SqueezeReport squeeze_audit(const ComplementedStructure& S, const MetricEstimator& metric,
                            double eta, double region_halfwidth, int pairs,
                            std::uint64_t seed = 0, int bands = 4);

// Continuity in eta (two-sided envelope from the limit proposition):
// |d_{V,eta} - d_{V,eta0}| <= (C(x,y)^{|eta-eta0|/min(eta,eta0)} - 1) d_{eta0}
// plus twice the bracket widths, with C(x,y) = 2 max{1, 2|x-y| + |x-y|^{1/2}}.
struct EtaContinuityRow {
  double eta = 0.0;
  DistanceEstimate estimate;
  double envelope = 0.0;
  double difference = 0.0;
  bool within = false;
};

struct EtaContinuityReport {
  double eta0 = 0.0;
  DistanceEstimate base;
  std::vector<EtaContinuityRow> rows;
  int dropped = 0;
  bool all_within = true;
};

EtaContinuityReport eta_continuity_audit(const ComplementedStructure& S,
                                         std::span<const double> x, std::span<const double> y,
                                         double eta0, const std::vector<double>& eta_grid,
                                         const EtaDistanceOptions& opts = {});

}  // namespace ccgeo::metrics

#endif
