#include "ccgeo/tangency/kirchheim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccgeo/support/sampling.hpp"

namespace ccgeo::tangency {

MetricDifferentialEstimate metric_differential(const SampledMap& f, const std::vector<double>& x,
                                               const std::vector<double>& direction,
                                               const metrics::MetricEstimator& metric,
                                               const std::vector<double>& radii,
                                               double divergence_cap) {
  MetricDifferentialEstimate est;
  const auto fx = f(x);
  for (double r : radii) {
    std::vector<double> xr(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xr[i] = x[i] + r * direction[i];
    const auto fxr = f(xr);
    const auto d = metric.estimate(fx, fxr);
    if (!d) {
      ++est.dropped;
      continue;
    }
    est.radii.push_back(r);
    est.quotients.push_back(d->midpoint() / r);
  }
  if (est.quotients.size() < 3)
    throw std::runtime_error("metric differential: too few admissible radii");

  // Radii come sorted decreasing; the finest three give the estimate.
  std::vector<std::size_t> order(est.radii.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return est.radii[a] > est.radii[b]; });

  // Divergence: quotients grow monotonically as radii shrink, beyond the cap.
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    monotone = monotone && est.quotients[order[i + 1]] >= est.quotients[order[i]] * 0.999;
  const double qmin = *std::min_element(est.quotients.begin(), est.quotients.end());
  const double qmax = *std::max_element(est.quotients.begin(), est.quotients.end());
  if (monotone && qmax > divergence_cap * std::max(qmin, 1e-300)) {
    est.divergent = true;
  }

  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
  const std::size_t fine = std::min<std::size_t>(3, order.size());
  for (std::size_t i = 0; i < fine; ++i) {
    const double q = est.quotients[order[order.size() - 1 - i]];
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    sum += q;
  }
  est.value = sum / fine;
  est.spread = hi - lo;
  return est;
}

void SeminormSample::validate() const {
  if (directions.size() != values.size() || directions.empty())
    throw std::invalid_argument("seminorm sample shape mismatch");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("seminorm values must be finite and non-negative");
}

SeminormSample sphere_grid_seminorm(
    int m, int count, const std::function<double(std::span<const double>)>& norm) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  SeminormSample sample;
  auto push = [&](std::vector<double> u) {
    sample.values.push_back(norm(u));
    sample.directions.push_back(std::move(u));
  };
  if (m == 1) {
    push({1.0});
    push({-1.0});
    return sample;
  }
  if (m == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * 3.14159265358979323846 * i / count;
      push({std::cos(a), std::sin(a)});
    }
    return sample;
  }
  if (m == 3) {
    // Fibonacci sphere (antipodal pairs added explicitly).
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < count / 2; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = 2.0 * 3.14159265358979323846 * i / golden;
      std::vector<double> u{r * std::cos(a), r * std::sin(a), z};
      push(u);
      for (auto& c : u) c = -c;
      push(u);
    }
    return sample;
  }
  // Quasi-random unit directions with antipodes.
  for (int i = 1; sample.directions.size() + 2 <= static_cast<std::size_t>(count); ++i) {
    auto u = halton_in_box(i, m, -1.0, 1.0);
    double n2 = 0.0;
    for (double c : u) n2 += c * c;
    if (n2 < 1e-6 || n2 > 1.0) continue;
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : u) c *= inv;
    push(u);
    for (auto& c : u) c = -c;
    push(u);
  }
  return sample;
}

double metric_jacobian(const SeminormSample& sample, double m, double degenerate_threshold) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  sample.validate();
  for (double v : sample.values) {
    if (v <= degenerate_threshold) return 0.0;  // the sphere integral diverges
  }
  double inv_sum = 0.0;
  for (double v : sample.values) inv_sum += std::pow(v, -m);
  // Equal quadrature weights area/N turn m L^m(B_1) / integral into N / sum.
  return static_cast<double>(sample.values.size()) / inv_sum;
}

}  // namespace ccgeo::tangency
