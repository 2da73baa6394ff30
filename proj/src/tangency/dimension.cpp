#include "ccgeo/tangency/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "ccgeo/flows/ballbox.hpp"

namespace ccgeo::tangency {

BoxDimensionEstimate box_counting_dimension(const std::vector<std::vector<double>>& points,
                                            const std::vector<double>& scales) {
  if (points.empty()) throw std::invalid_argument("box dimension of an empty cloud");
  if (scales.size() < 2) throw std::invalid_argument("need at least 2 scales");
  BoxDimensionEstimate est;
  const int dim = static_cast<int>(points[0].size());

  for (double eps : scales) {
    std::unordered_set<std::string> boxes;
    std::string key;
    for (const auto& p : points) {
      key.clear();
      for (int d = 0; d < dim; ++d) {
        key += std::to_string(static_cast<long long>(std::floor(p[d] / eps)));
        key += ':';
      }
      boxes.insert(key);
    }
    est.scales.push_back(eps);
    est.counts.push_back(boxes.size());
  }

  // All counts equal to 1: a single point, dimension 0 with no spread.
  bool all_one = true;
  for (auto c : est.counts) all_one = all_one && (c == 1);
  if (all_one) {
    est.dimension = 0.0;
    est.confidence = 0.0;
    return est;
  }

  std::vector<double> x, y;
  for (std::size_t i = 0; i < est.scales.size(); ++i) {
    x.push_back(1.0 / est.scales[i]);
    y.push_back(static_cast<double>(est.counts[i]));
  }
  const auto [slope, se] = flows::loglog_slope(x, y);
  est.dimension = slope;
  est.confidence = 2.0 * se;
  return est;
}

PremeasureEstimate hausdorff_premeasure(const std::vector<std::vector<double>>& points,
                                        const metrics::MetricEstimator& metric, double m,
                                        double delta_cov) {
  PremeasureEstimate est;
  est.delta_cov = delta_cov;
  if (points.empty()) return est;

  std::vector<std::vector<double>> sorted = points;
  std::sort(sorted.begin(), sorted.end());

  std::vector<bool> covered(sorted.size(), false);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (covered[i]) continue;
    covered[i] = true;
    std::vector<std::size_t> members{i};
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (covered[j]) continue;
      const auto d = metric.estimate(sorted[i], sorted[j]);
      if (!d) {
        ++est.dropped_pairs;
        continue;
      }
      if (d->upper <= 0.5 * delta_cov) {
        covered[j] = true;
        members.push_back(j);
      }
    }
    // Diameter of the covered part: pairwise upper estimates, capped at
    // delta_cov (which the triangle inequality already guarantees).
    double diam = 0.0;
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const auto d = metric.estimate(sorted[members[a]], sorted[members[b]]);
        if (!d) {
          ++est.dropped_pairs;
          continue;
        }
        diam = std::max(diam, d->upper);
      }
    }
    est.value += std::pow(std::min(diam, delta_cov), m);
    est.covers += 1;
  }
  return est;
}

}  // namespace ccgeo::tangency
