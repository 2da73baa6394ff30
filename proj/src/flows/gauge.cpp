#include "ccgeo/flows/gauge.hpp"

#include <cmath>

namespace ccgeo::flows {

bool gauge_membership(const GaugeSpec& g, std::span<const double> t) {
  if (t.size() != g.degrees.size())
    throw std::invalid_argument("gauge membership: dimension mismatch");
  double scale = g.parameter;
  if (g.kind == GaugeSpec::Kind::Cone) {
    double norm = 0.0;
    for (double v : t) norm += v * v;
    scale = g.parameter * std::sqrt(norm);
  }
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (std::abs(t[j]) > std::pow(scale, g.degrees[j])) return false;
  }
  return true;
}

}  // namespace ccgeo::flows
