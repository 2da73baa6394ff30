#ifndef CCGEO_FLOWS_GAUGE_HPP
#define CCGEO_FLOWS_GAUGE_HPP

#include <span>
#include <stdexcept>
#include <vector>

namespace ccgeo::flows {

// Anisotropic gauges in exponential coordinates: the box Q(rho) with sides
// rho^{deg X_j} and the cone X(Lambda) with |t_l| <= (Lambda |t|)^{deg X_l}.
struct GaugeSpec {
  enum class Kind { Box, Cone };
  Kind kind = Kind::Box;
  double parameter = 0.0;  // rho or Lambda
  std::vector<int> degrees;

  GaugeSpec(Kind kind_, double parameter_, std::vector<int> degrees_)
      : kind(kind_), parameter(parameter_), degrees(std::move(degrees_)) {
    if (parameter <= 0) throw std::invalid_argument("gauge parameter must be positive");
    for (int d : degrees)
      if (d < 1) throw std::invalid_argument("gauge degrees must be positive");
  }
};

bool gauge_membership(const GaugeSpec& g, std::span<const double> t);

}  // namespace ccgeo::flows

#endif
