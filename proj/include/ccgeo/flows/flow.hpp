#ifndef CCGEO_FLOWS_FLOW_HPP
#define CCGEO_FLOWS_FLOW_HPP

#include <span>
#include <vector>

#include "ccgeo/structures/structure.hpp"

namespace ccgeo::flows {

using structures::ComplementedStructure;
using structures::WorkingBox;
using calc::PolyVectorField;

// Double-coefficient copy of a polynomial field for hot integration loops.
class CompiledField {
 public:
  CompiledField() = default;
  explicit CompiledField(const PolyVectorField& X);

  int dim() const { return n_; }

  // v += w * X(x)
  void accumulate(std::span<const double> x, double w, std::span<double> v) const;

 private:
  struct Term {
    double c;
    std::vector<std::uint32_t> exps;
  };
  int n_ = 0;
  std::vector<std::vector<Term>> comps_;
};

std::vector<CompiledField> compile_full_frame(const ComplementedStructure& S);
std::vector<CompiledField> compile_frame(const ComplementedStructure& S);

struct Trajectory {
  bool ok = false;          // false when the trajectory left the working box
  std::vector<double> endpoint;
  double length = 0.0;      // Euclidean arc length of the trajectory
  int steps = 0;
};

// Fixed-step RK4 for dy/dt = sum_j weights[j] * fields[j](y) on [0, time],
// with the Euclidean arc length integrated as an extra state. `box`, when
// given, is checked (with slack) at every step.
Trajectory integrate_weighted(const std::vector<CompiledField>& fields,
                              std::span<const double> weights, std::span<const double> x0,
                              double time, int steps, const WorkingBox* box = nullptr,
                              double box_slack = 0.25);

struct FlowResult {
  std::vector<double> point;
  double length = 0.0;
  double error_estimate = 0.0;  // step-halving estimate for the endpoint
  int steps = 0;
};

// Flow of sum_j t_j X_j over the full frame from x for the given time;
// classical fixed-step 4th order with a step-halving error report.
// Throws when the trajectory leaves the working box.
FlowResult flow_point(const ComplementedStructure& S, std::span<const double> x,
                      std::span<const double> field_coefficients, double time,
                      double h_int = 1.0 / 64);

}  // namespace ccgeo::flows

#endif
