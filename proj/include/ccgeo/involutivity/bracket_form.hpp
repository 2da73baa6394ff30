#ifndef CCGEO_INVOLUTIVITY_BRACKET_FORM_HPP
#define CCGEO_INVOLUTIVITY_BRACKET_FORM_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ccgeo/structures/structure.hpp"

namespace ccgeo::involutivity {

using calc::Point;
using structures::ComplementedStructure;

// The point-wise vector-valued bracket form B_x: for frame fields X_1..X_k,
// component l stores the k x k antisymmetric matrix of the coefficients of
// [X_i, X_j](x) along the complement field X_{k+l} (i.e. the class mod V(x)
// expressed in the complement basis).
struct BracketForm {
  Point base;
  int k = 0;
  int complement_dim = 0;
  std::vector<Eigen::MatrixXd> components;
  std::vector<RationalMatrix> components_exact;  // filled in exact mode
  bool exact = false;

  bool all_zero(double tol = 0.0) const;
  // Frobenius norm over all components.
  double norm() const;
};

// Evaluates all k(k-1)/2 frame brackets at x and reduces them mod V(x) in the
// complement basis; exact when x is exact.
BracketForm bracket_form(const ComplementedStructure& S, const Point& x);

}  // namespace ccgeo::involutivity

#endif
