#include "ccgeo/calc/field.hpp"

#include <stdexcept>

namespace ccgeo::calc {

PolyVectorField::PolyVectorField(int num_vars)
    : num_vars_(num_vars), components_(num_vars, Polynomial(num_vars)) {
  if (num_vars <= 0) throw std::invalid_argument("field needs positive dimension");
}

PolyVectorField::PolyVectorField(std::vector<Polynomial> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("empty component list");
  num_vars_ = static_cast<int>(components_.size());
  for (const auto& c : components_) {
    if (c.num_vars() != num_vars_)
      throw std::invalid_argument("component num_vars must equal ambient dimension");
  }
}

PolyVectorField PolyVectorField::constant(int num_vars, const std::vector<Rational>& v) {
  if (static_cast<int>(v.size()) != num_vars)
    throw std::invalid_argument("constant vector length mismatch");
  PolyVectorField X(num_vars);
  for (int j = 0; j < num_vars; ++j) X.components_[j] = Polynomial::constant(num_vars, v[j]);
  return X;
}

PolyVectorField PolyVectorField::basis(int num_vars, int index) {
  PolyVectorField X(num_vars);
  X.components_.at(index) = Polynomial::constant(num_vars, Rational(1));
  return X;
}

bool PolyVectorField::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& rhs) const {
  if (num_vars_ != rhs.num_vars_) throw std::invalid_argument("dimension mismatch");
  PolyVectorField r(num_vars_);
  for (int j = 0; j < num_vars_; ++j) r.components_[j] = components_[j] + rhs.components_[j];
  return r;
}

PolyVectorField PolyVectorField::operator-(const PolyVectorField& rhs) const {
  return *this + (-rhs);
}

PolyVectorField PolyVectorField::operator-() const {
  PolyVectorField r(num_vars_);
  for (int j = 0; j < num_vars_; ++j) r.components_[j] = -components_[j];
  return r;
}

PolyVectorField PolyVectorField::operator*(const Rational& s) const {
  PolyVectorField r(num_vars_);
  for (int j = 0; j < num_vars_; ++j) r.components_[j] = components_[j] * s;
  return r;
}

PolyVectorField operator*(const Polynomial& f, const PolyVectorField& X) {
  PolyVectorField r(X.num_vars_);
  for (int j = 0; j < X.num_vars_; ++j) r.components_[j] = f * X.components_[j];
  return r;
}

std::vector<Rational> PolyVectorField::evaluate(std::span<const Rational> x) const {
  std::vector<Rational> v;
  v.reserve(num_vars_);
  for (const auto& c : components_) v.push_back(c.evaluate(x));
  return v;
}

std::vector<double> PolyVectorField::evaluate(std::span<const double> x) const {
  std::vector<double> v;
  v.reserve(num_vars_);
  for (const auto& c : components_) v.push_back(c.evaluate(x));
  return v;
}

Point PolyVectorField::evaluate(const Point& x) const {
  if (x.dim() != num_vars_) throw std::invalid_argument("evaluation point dimension mismatch");
  if (x.is_exact()) return Point(evaluate(std::span<const Rational>(x.exact())));
  auto xd = x.as_double();
  return Point(evaluate(std::span<const double>(xd)));
}

PolyVectorField lie_bracket(const PolyVectorField& X, const PolyVectorField& Y) {
  if (X.num_vars() != Y.num_vars()) throw std::invalid_argument("dimension mismatch in bracket");
  const int n = X.num_vars();
  PolyVectorField r(n);
  for (int j = 0; j < n; ++j) {
    Polynomial acc(n);
    for (int i = 0; i < n; ++i) {
      acc += X.component(i) * Y.component(j).derivative(i);
      acc -= Y.component(i) * X.component(j).derivative(i);
    }
    r.component(j) = std::move(acc);
  }
  return r;
}

Polynomial divergence(const PolyVectorField& X) {
  const int n = X.num_vars();
  Polynomial acc(n);
  for (int i = 0; i < n; ++i) acc += X.component(i).derivative(i);
  return acc;
}

Polynomial directional_derivative(const Polynomial& f, const PolyVectorField& X) {
  if (f.num_vars() != X.num_vars()) throw std::invalid_argument("dimension mismatch");
  const int n = X.num_vars();
  Polynomial acc(n);
  for (int i = 0; i < n; ++i) acc += X.component(i) * f.derivative(i);
  return acc;
}

}  // namespace ccgeo::calc
