#ifndef CCGEO_STRUCTURES_CATALOG_HPP
#define CCGEO_STRUCTURES_CATALOG_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccgeo/structures/structure.hpp"

namespace ccgeo::structures {

// Structure constants of a nilpotent Lie algebra: [e_i, e_j] = sum_l c[{i,j}][l] e_l
// stored for i < j (0-based indices), extended antisymmetrically.
class StructureConstants {
 public:
  explicit StructureConstants(int n) : n_(n) {}

  int dim() const { return n_; }

  void set(int i, int j, std::vector<std::pair<int, Rational>> combo);

  // Algebra bracket of coefficient vectors whose entries live in any ring with
  // +,*; used both on rationals and on polynomials (for ad_x with symbolic x).
  template <class Scalar>
  std::vector<Scalar> bracket(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                              const Scalar& zero) const {
    std::vector<Scalar> out(n_, zero);
    for (const auto& [key, combo] : table_) {
      const auto [i, j] = key;
      const Scalar minor = a[i] * b[j] - a[j] * b[i];
      for (const auto& [l, c] : combo) out[l] += minor * c;
    }
    return out;
  }

  const std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>>& table() const {
    return table_;
  }

 private:
  int n_;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> table_;
};

// One commutation relation of a model, with its verification status.
struct RelationCheck {
  std::string relation;  // e.g. "[X3,X4] = -X8 + X11"
  bool exact_pass = false;
};

struct CarnotModel {
  std::string name;
  int n = 0;
  int k = 0;           // rank of the generated complemented structure
  int generators = 0;  // group rank (generators of the stratification)
  int step = 1;
  StructureConstants constants{0};
  std::vector<PolyVectorField> fields;  // all n left-invariant fields
  ComplementedStructure structure;
  std::vector<RelationCheck> relations;

  bool all_relations_pass() const {
    for (const auto& r : relations)
      if (!r.exact_pass) return false;
    return true;
  }

  // Complemented structure over the group generators alone (for free33 this
  // is the rank-3 horizontal distribution with the 11 higher fields as
  // complement; for the other models it coincides with `structure`).
  ComplementedStructure generator_structure;

  // Distribution spanned by the group generators (used for Hormander-step
  // experiments; for free33 this is rank 3 while the structure itself is V6).
  Distribution generator_distribution() const;
};

// Catalog names: heisenberg1, heisenberg_d (the 2nd Heisenberg group; any
// heisenberg<d> is accepted), engel, free33, plus the flat model "flat"
// used by audits. Unknown names throw std::invalid_argument.
CarnotModel build_catalog_model(const std::string& name);

// Left-invariant frame in exponential coordinates via the truncated series
// X_v(x) = v + 1/2 [x,v] + 1/12 [x,[x,v]] (exact for step <= 3). Exactness is
// not assumed: build_catalog_model verifies every structure-constant relation
// as a polynomial identity and records the outcome in `relations`.
PolyVectorField left_invariant_field(const StructureConstants& c, int index);

}  // namespace ccgeo::structures

#endif
