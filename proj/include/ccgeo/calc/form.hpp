#ifndef CCGEO_CALC_FORM_HPP
#define CCGEO_CALC_FORM_HPP

#include <map>
#include <vector>

#include "ccgeo/calc/field.hpp"
#include "ccgeo/calc/polynomial.hpp"

namespace ccgeo::calc {

// Strictly increasing multi-index, 0-based. The empty index denotes degree 0.
using MultiIndex = std::vector<int>;

// Sign of sorting the concatenation (a, b) of two disjoint increasing
// multi-indices; 0 if they intersect. The merged index is written to out.
int merge_sign(const MultiIndex& a, const MultiIndex& b, MultiIndex* out);

namespace detail {

// Shared storage for alternating objects (forms and multivector fields):
// a map from increasing multi-index to polynomial coefficient.
class AlternatingTable {
 public:
  AlternatingTable() = default;
  AlternatingTable(int num_vars, int degree);

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }

  const std::map<MultiIndex, Polynomial>& coefficients() const { return coeffs_; }
  const Polynomial& coefficient(const MultiIndex& idx) const;
  void add_term(const MultiIndex& idx, const Polynomial& c);

  bool equals(const AlternatingTable& rhs) const;

 protected:
  int num_vars_ = 0;
  int degree_ = 0;
  std::map<MultiIndex, Polynomial> coeffs_;
  static const Polynomial& zero_poly(int num_vars);
};

}  // namespace detail

// Differential p-form with polynomial coefficients:
// omega = sum_{i in I(n,p)} omega_i dx_i.
class PolyForm : public detail::AlternatingTable {
 public:
  PolyForm() = default;
  PolyForm(int num_vars, int degree);

  static PolyForm dx(int num_vars, int index);
  static PolyForm from_covector(int num_vars, const std::vector<Polynomial>& comps);

  PolyForm operator+(const PolyForm& rhs) const;
  PolyForm operator-(const PolyForm& rhs) const;
  PolyForm operator-() const;
  PolyForm operator*(const Polynomial& f) const;
  bool operator==(const PolyForm& rhs) const { return equals(rhs); }
  bool operator!=(const PolyForm& rhs) const { return !equals(rhs); }
};

// p-vector field with polynomial coefficients, v = sum_i v_i e_i.
class PolyMultiField : public detail::AlternatingTable {
 public:
  PolyMultiField() = default;
  PolyMultiField(int num_vars, int degree);

  static PolyMultiField from_field(const PolyVectorField& X);

  PolyMultiField operator+(const PolyMultiField& rhs) const;
  PolyMultiField operator-(const PolyMultiField& rhs) const;
  bool operator==(const PolyMultiField& rhs) const { return equals(rhs); }
  bool operator!=(const PolyMultiField& rhs) const { return !equals(rhs); }

  // Degree-1 multivectors convert back to plain vector fields.
  PolyVectorField to_field() const;
};

PolyForm wedge(const PolyForm& a, const PolyForm& b);
PolyMultiField wedge(const PolyMultiField& a, const PolyMultiField& b);
PolyMultiField wedge(const PolyVectorField& X, const PolyVectorField& Y);

// Exterior derivative per the coordinate formula
// d omega = sum_i sum_j d_j(omega_i) dx_j ^ dx_i; degree must be < num_vars.
PolyForm exterior_derivative(const PolyForm& omega);

// Duality pairing <v, alpha> for equal degrees, <e_I, dx_J> = delta_{I,J}.
Polynomial pairing(const PolyMultiField& v, const PolyForm& alpha);

// Interior product v |_ alpha of a p-vector and an h-form (h <= p), defined by
// <v |_ alpha, beta> = <v, alpha ^ beta> for every (p-h)-covector beta.
PolyMultiField interior_product(const PolyMultiField& v, const PolyForm& alpha);

// omega(X) for 1-forms, and omega(X ^ Y) for 2-forms.
Polynomial apply(const PolyForm& omega, const PolyVectorField& X);
Polynomial apply(const PolyForm& omega, const PolyVectorField& X, const PolyVectorField& Y);

}  // namespace ccgeo::calc

#endif
