#ifndef CCGEO_FLOWS_EXP_CHART_HPP
#define CCGEO_FLOWS_EXP_CHART_HPP

#include <optional>

#include "ccgeo/flows/flow.hpp"

namespace ccgeo::flows {

// Exponential chart Exp_zeta(t) = flow of sum t_j X_j from zeta at time 1.
class ExpChart {
 public:
  ExpChart(const ComplementedStructure& S, std::vector<double> base, double radius,
           double h_int = 0.0);

  const ComplementedStructure& structure() const { return *S_; }
  const std::vector<double>& base() const { return base_; }
  double radius() const { return radius_; }
  double h_int() const { return h_int_; }

  // |t|_1 must stay within the chart radius.
  std::vector<double> exp(std::span<const double> t) const;

  struct InversionResult {
    std::vector<double> t;
    double final_gap = 0.0;
    int iterations = 0;
    bool converged = false;
  };
  // Damped Newton inversion of Exp with a finite-difference Jacobian
  // refreshed every 3 iterations.
  InversionResult exp_inverse(std::span<const double> target, double tol = 1e-12,
                              int max_iterations = 60) const;

 private:
  const ComplementedStructure* S_;
  std::vector<double> base_;
  double radius_;
  double h_int_;
  std::vector<CompiledField> fields_;
};

}  // namespace ccgeo::flows

#endif
