#ifndef CCGEO_CALC_FIELD_HPP
#define CCGEO_CALC_FIELD_HPP

#include <vector>

#include "ccgeo/calc/point.hpp"
#include "ccgeo/calc/polynomial.hpp"

namespace ccgeo::calc {

// Polynomial vector field on R^n: components[j] is the coefficient of e_{j+1}.
class PolyVectorField {
 public:
  PolyVectorField() = default;
  explicit PolyVectorField(int num_vars);
  explicit PolyVectorField(std::vector<Polynomial> components);

  static PolyVectorField zero(int num_vars) { return PolyVectorField(num_vars); }
  // Constant field with the given rational coordinates.
  static PolyVectorField constant(int num_vars, const std::vector<Rational>& v);
  static PolyVectorField basis(int num_vars, int index);

  int num_vars() const { return num_vars_; }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& component(int j) const { return components_.at(j); }
  Polynomial& component(int j) { return components_.at(j); }

  bool is_zero() const;

  PolyVectorField operator+(const PolyVectorField& rhs) const;
  PolyVectorField operator-(const PolyVectorField& rhs) const;
  PolyVectorField operator-() const;
  PolyVectorField operator*(const Rational& s) const;
  // Module action of scalar polynomials on fields, f*X.
  friend PolyVectorField operator*(const Polynomial& f, const PolyVectorField& X);

  bool operator==(const PolyVectorField& rhs) const { return components_ == rhs.components_; }
  bool operator!=(const PolyVectorField& rhs) const { return !(*this == rhs); }

  std::vector<Rational> evaluate(std::span<const Rational> x) const;
  std::vector<double> evaluate(std::span<const double> x) const;
  // Mode-dispatching evaluation; exact when the point is exact.
  Point evaluate(const Point& x) const;

 private:
  int num_vars_ = 0;
  std::vector<Polynomial> components_;
};

// Standard convention: [X,Y]^j = sum_i (X_i d_i Y^j - Y_i d_i X^j).
PolyVectorField lie_bracket(const PolyVectorField& X, const PolyVectorField& Y);

Polynomial divergence(const PolyVectorField& X);

// <grad f, X> = sum_i X_i d_i f.
Polynomial directional_derivative(const Polynomial& f, const PolyVectorField& X);

}  // namespace ccgeo::calc

#endif
