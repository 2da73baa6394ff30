#include "ccgeo/metrics/audits.hpp"

#include <algorithm>
#include <cmath>

#include "ccgeo/support/rng.hpp"
#include "ccgeo/support/sampling.hpp"

namespace ccgeo::metrics {

std::optional<DistanceEstimate> EuclideanMetric::estimate(std::span<const double> x,
                                                          std::span<const double> y) const {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] - y[i]) * (x[i] - y[i]);
  d = std::sqrt(d);
  DistanceEstimate e;
  e.lower = e.upper = d;
  e.converged = true;
  e.method = "euclidean (exact)";
  return e;
}

CcMetric::CcMetric(const ComplementedStructure& S, CcDistanceOptions opts)
    : S_(&S), opts_(opts) {}

std::optional<DistanceEstimate> CcMetric::estimate(std::span<const double> x,
                                                   std::span<const double> y) const {
  const auto est = cc_distance(*S_, x, y, opts_);
  if (!est.converged) return std::nullopt;
  return est;
}

EtaBoxMetric::EtaBoxMetric(const ComplementedStructure& S, double eta, EtaDistanceOptions opts)
    : eval_(std::make_shared<EtaLengthEvaluator>(S, eta)), opts_(opts) {}

std::optional<DistanceEstimate> EtaBoxMetric::estimate(std::span<const double> x,
                                                       std::span<const double> y) const {
  const auto est = eta_distance(*eval_, x, y, opts_);
  if (!est.converged) return std::nullopt;
  return est;
}

double SqueezeReport::max_band_ratio() const {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& b : bands) {
    if (b.pairs_used == 0) continue;
    lo = std::min(lo, b.fitted_c);
    hi = std::max(hi, b.fitted_c);
  }
  if (!(lo > 0) || hi <= 0) return 0.0;
  return hi / lo;
}

SqueezeReport squeeze_audit(const ComplementedStructure& S, const MetricEstimator& metric,
                            double eta, double region_halfwidth, int pairs, std::uint64_t seed,
                            int band_count) {
  const int n = S.n();
  SqueezeReport rep;
  rep.seed = seed;
  EtaLengthEvaluator gauge_eval(S, eta);
  rep.modulus_c = gauge_eval.projection_modulus_c();

  // Pairs: base points quasi-random in the region, displacements log-uniform
  // across the dyadic bands so each band receives samples.
  const double g_max = region_halfwidth;
  const double g_min = g_max / std::pow(2.0, band_count);
  rep.bands.resize(band_count);
  for (int b = 0; b < band_count; ++b) {
    rep.bands[b].band_hi = g_max / std::pow(2.0, b);
    rep.bands[b].band_lo = g_max / std::pow(2.0, b + 1);
  }

  Rng rng(derive_seed(seed, "squeeze-audit"));
  const int complement_count = n - S.k();
  for (int p = 0; p < pairs; ++p) {
    const auto xs = halton_in_box(2 * p + 1, n, -0.5 * region_halfwidth, 0.5 * region_halfwidth);

    // Target a gauge band directly so every band receives pairs, and
    // alternate generic directions with complement-aligned ones (the latter
    // expose the anisotropy, which is the whole point of the audit).
    const int band = rng.int_in(0, band_count - 1);
    const double g_target = rep.bands[band].band_lo +
                            rng.uniform(0.05, 0.95) *
                                (rep.bands[band].band_hi - rep.bands[band].band_lo);
    std::vector<double> dir(n);
    if (rng.uniform() < 0.5 && complement_count > 0) {
      const int l = rng.int_in(0, complement_count - 1);
      dir = S.complement[l].evaluate(std::span<const double>(xs));
    } else {
      for (auto& v : dir) v = rng.normal();
    }
    double dn = 0.0;
    for (double v : dir) dn += v * v;
    dn = std::sqrt(dn);
    if (dn < 1e-12) continue;
    for (auto& v : dir) v /= dn;

    // Scale the displacement so its gauge hits the target (monotone in the
    // scale; plain bisection).
    double lo = 0.0, hi = 2.0 * region_halfwidth;
    std::vector<double> disp(n);
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      for (int i = 0; i < n; ++i) disp[i] = mid * dir[i];
      if (gauge_eval.gauge(xs, disp) < g_target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    for (int i = 0; i < n; ++i) disp[i] = 0.5 * (lo + hi) * dir[i];
    const double g = gauge_eval.gauge(xs, disp);
    std::vector<double> ys(n);
    for (int i = 0; i < n; ++i) ys[i] = xs[i] + disp[i];

    const auto est = metric.estimate(xs, ys);
    if (!est || est->midpoint() <= 0) {
      ++rep.dropped;
      continue;
    }
    const double d = est->midpoint();
    const double c = std::max(g / d, d / g);
    for (auto& b : rep.bands) {
      if (g >= b.band_lo && g < b.band_hi) {
        b.fitted_c = std::max(b.fitted_c, c);
        b.pairs_used += 1;
        break;
      }
    }
  }
  return rep;
}

EtaContinuityReport eta_continuity_audit(const ComplementedStructure& S,
                                         std::span<const double> x, std::span<const double> y,
                                         double eta0, const std::vector<double>& eta_grid,
                                         const EtaDistanceOptions& opts) {
  EtaContinuityReport rep;
  rep.eta0 = eta0;

  EtaLengthEvaluator eval0(S, eta0);
  rep.base = eta_distance(eval0, x, y, opts);

  double dist = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dist += (x[i] - y[i]) * (x[i] - y[i]);
  dist = std::sqrt(dist);
  const double cxy = 2.0 * std::max(1.0, 2.0 * dist + std::sqrt(dist));

  for (const double eta : eta_grid) {
    EtaContinuityRow row;
    row.eta = eta;
    EtaLengthEvaluator eval(S, eta);
    row.estimate = eta_distance(eval, x, y, opts);
    if (!row.estimate.converged || !rep.base.converged) {
      ++rep.dropped;
      continue;
    }
    const double exponent = std::abs(eta - eta0) / std::min(eta, eta0);
    row.envelope = (std::pow(cxy, exponent) - 1.0) * rep.base.midpoint() +
                   2.0 * (row.estimate.width() + rep.base.width());
    row.difference = std::abs(row.estimate.midpoint() - rep.base.midpoint());
    row.within = row.difference <= row.envelope + 1e-12;
    rep.all_within = rep.all_within && row.within;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace ccgeo::metrics
