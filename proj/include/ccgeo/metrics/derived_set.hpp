#ifndef CCGEO_METRICS_DERIVED_SET_HPP
#define CCGEO_METRICS_DERIVED_SET_HPP

#include "ccgeo/metrics/types.hpp"

namespace ccgeo::metrics {

// Derived set of gamma at t: all limits of straddling difference quotients.
// Interior of a segment gives the singleton {velocity}; a vertex gives the
// convex segment between the adjacent velocities; endpoints are one-sided.
DerivedSet derived_set(const PolygonalCurve& gamma, double t);

// Exact check of the mean-value property for the scalar curve <gamma, w>:
// returns a time with 0 in the derived set of the pairing, when one exists.
// For closed curves one always does.
bool scalar_derived_zero_exists(const PolygonalCurve& gamma, const std::vector<double>& w,
                                double* t_found = nullptr);

}  // namespace ccgeo::metrics

#endif
