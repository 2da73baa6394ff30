#include "ccgeo/metrics/derived_set.hpp"

#include <cmath>
#include <stdexcept>

namespace ccgeo::metrics {

std::vector<double> PolygonalCurve::velocity(int segment) const {
  const double dt = times.at(segment + 1) - times.at(segment);
  std::vector<double> v(dim());
  for (int i = 0; i < dim(); ++i) v[i] = (vertices[segment + 1][i] - vertices[segment][i]) / dt;
  return v;
}

double PolygonalCurve::lipschitz_bound() const {
  double lip = 0.0;
  for (int s = 0; s < segments(); ++s) {
    const auto v = velocity(s);
    double n2 = 0.0;
    for (double c : v) n2 += c * c;
    lip = std::max(lip, std::sqrt(n2));
  }
  return lip;
}

void PolygonalCurve::validate() const {
  if (vertices.size() < 2) throw std::invalid_argument("curve needs at least 2 vertices");
  if (times.size() != vertices.size())
    throw std::invalid_argument("time grid size must match vertex count");
  if (std::abs(times.front()) > 1e-15 || std::abs(times.back() - 1.0) > 1e-15)
    throw std::invalid_argument("time grid must start at 0 and end at 1");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1])) throw std::invalid_argument("time grid must increase");
  for (const auto& v : vertices)
    if (static_cast<int>(v.size()) != dim())
      throw std::invalid_argument("vertex dimension mismatch");
}

double DerivedSet::diameter() const {
  if (extremes.size() < 2) return 0.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < extremes[0].size(); ++i) {
    const double d = extremes[0][i] - extremes[1][i];
    d2 += d * d;
  }
  return std::sqrt(d2);
}

DerivedSet derived_set(const PolygonalCurve& gamma, double t) {
  gamma.validate();
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("t must lie in [0,1]");
  const int m = gamma.segments();

  // Locate t: vertex index or segment interior.
  int vertex = -1;
  for (int i = 0; i <= m; ++i) {
    if (std::abs(t - gamma.times[i]) < 1e-14) {
      vertex = i;
      break;
    }
  }
  DerivedSet out;
  if (vertex < 0) {
    int seg = 0;
    while (seg < m - 1 && t >= gamma.times[seg + 1]) ++seg;
    out.extremes.push_back(gamma.velocity(seg));
    return out;
  }
  if (vertex == 0) {
    out.extremes.push_back(gamma.velocity(0));
    return out;
  }
  if (vertex == m) {
    out.extremes.push_back(gamma.velocity(m - 1));
    return out;
  }
  out.extremes.push_back(gamma.velocity(vertex - 1));
  out.extremes.push_back(gamma.velocity(vertex));
  out.convex_segment = true;
  return out;
}

bool scalar_derived_zero_exists(const PolygonalCurve& gamma, const std::vector<double>& w,
                                double* t_found) {
  gamma.validate();
  const int m = gamma.segments();
  std::vector<double> slope(m);
  for (int s = 0; s < m; ++s) {
    const auto v = gamma.velocity(s);
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += v[i] * w[i];
    slope[s] = acc;
  }
  for (int s = 0; s < m; ++s) {
    if (slope[s] == 0.0) {
      if (t_found) *t_found = 0.5 * (gamma.times[s] + gamma.times[s + 1]);
      return true;
    }
  }
  // Interior vertices carry the convex hull of the adjacent slopes.
  for (int i = 1; i < m; ++i) {
    if ((slope[i - 1] <= 0.0 && slope[i] >= 0.0) || (slope[i - 1] >= 0.0 && slope[i] <= 0.0)) {
      if (t_found) *t_found = gamma.times[i];
      return true;
    }
  }
  return false;
}

}  // namespace ccgeo::metrics
