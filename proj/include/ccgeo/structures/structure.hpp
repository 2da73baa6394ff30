#ifndef CCGEO_STRUCTURES_STRUCTURE_HPP
#define CCGEO_STRUCTURES_STRUCTURE_HPP

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccgeo/calc/field.hpp"
#include "ccgeo/support/exact_linalg.hpp"

namespace ccgeo::structures {

using calc::ArithmeticMode;
using calc::Point;
using calc::Polynomial;
using calc::PolyVectorField;

// Uniform working box [lo,hi]^n.
struct WorkingBox {
  double lo = -1.0;
  double hi = 1.0;
  bool contains(std::span<const double> x, double slack = 0.0) const {
    for (double v : x)
      if (v < lo - slack || v > hi + slack) return false;
    return true;
  }
  double radius() const { return 0.5 * (hi - lo); }
};

// Bracket recipe for a complement field: either a generator index (1-based)
// or a bracket of two recipes. Degree = number of leaves.
struct Recipe {
  int leaf = 0;  // > 0 for a generator leaf
  std::shared_ptr<Recipe> left, right;

  bool is_leaf() const { return leaf > 0; }
  int degree() const { return is_leaf() ? 1 : left->degree() + right->degree(); }
  std::string to_string() const;
};

Recipe recipe_leaf(int index);
Recipe recipe_bracket(Recipe a, Recipe b);

// Builds the field [X_{i1},[...,[X_{iN-1},X_{iN}]...]] prescribed by a recipe.
PolyVectorField realize_recipe(const Recipe& r, const std::vector<PolyVectorField>& frame);

// A distribution of k-planes spanned by a polynomial frame.
struct Distribution {
  int n = 0;
  int k = 0;
  std::vector<PolyVectorField> frame;
  std::string name;
};

// Distribution plus a complement frame and per-field degrees
// (frame fields first, then complements).
struct ComplementedStructure {
  Distribution distribution;
  std::vector<PolyVectorField> complement;
  std::vector<std::optional<Recipe>> complement_recipes;  // nullopt: declared, not derived
  std::vector<int> degrees;                               // length n
  WorkingBox box;
  std::vector<std::string> warnings;

  int n() const { return distribution.n; }
  int k() const { return distribution.k; }
  const std::string& name() const { return distribution.name; }

  // Frame followed by complement; length n.
  std::vector<const PolyVectorField*> full_frame() const;

  // Columns are the full-frame fields evaluated at x.
  Eigen::MatrixXd frame_matrix(std::span<const double> x) const;
  RationalMatrix frame_matrix_exact(std::span<const Rational> x) const;

  int max_degree() const;
};

// Oblique projection pair onto V(x) along W(x) and vice versa.
struct ProjectionPair {
  Point base;
  Eigen::MatrixXd pi_v;
  Eigen::MatrixXd pi_w;
  std::optional<RationalMatrix> pi_v_exact;
  std::optional<RationalMatrix> pi_w_exact;
};

// Parses, realizes complement recipes and checks invariants: frame
// independence at the box centre and full-frame independence at `samples`
// quasi-random points of the working box. Throws std::runtime_error with a
// witness point and singular values on failure.
ComplementedStructure load_structure(const std::string& text, int samples = 1000);
ComplementedStructure load_structure_file(const std::string& path, int samples = 1000);

// Smallest N such that elementary commutators of length <= N span R^n at x,
// by breadth-first bracket closure with exact rank tests in exact mode.
struct HormanderResult {
  bool bracket_generating = false;
  int step = 0;  // valid when bracket_generating
  int max_step_tried = 0;
  int rank_reached = 0;
};
HormanderResult hormander_step(const Distribution& D, const Point& x, int max_step);

ProjectionPair complement_projections(const ComplementedStructure& S, const Point& x);

// Least C with ||Pi_y^V - Pi_z^V|| <= C |y-z| over sampled pairs in the box
// region, plus a 10% safety factor.
struct ModulusEstimate {
  double c = 0.0;
  int pairs = 0;
  double region_halfwidth = 0.0;
  std::uint64_t seed = 0;
};
ModulusEstimate projection_modulus(const ComplementedStructure& S,
                                   const std::vector<double>& center, double half_width,
                                   int samples, std::uint64_t seed = 0);

}  // namespace ccgeo::structures

#endif
