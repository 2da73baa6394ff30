#include "ccgeo/calc/form.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccgeo::calc {

int merge_sign(const MultiIndex& a, const MultiIndex& b, MultiIndex* out) {
  MultiIndex merged;
  merged.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  int inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      merged.push_back(a[i++]);
    } else {
      // b[j] jumps over the remaining entries of a.
      inversions += static_cast<int>(a.size() - i);
      merged.push_back(b[j++]);
    }
  }
  while (i < a.size()) merged.push_back(a[i++]);
  while (j < b.size()) merged.push_back(b[j++]);
  if (out) *out = std::move(merged);
  return (inversions % 2 == 0) ? 1 : -1;
}

namespace detail {

AlternatingTable::AlternatingTable(int num_vars, int degree)
    : num_vars_(num_vars), degree_(degree) {
  if (num_vars < 0 || degree < 0 || degree > num_vars)
    throw std::invalid_argument("invalid degree for alternating object");
}

const Polynomial& AlternatingTable::zero_poly(int num_vars) {
  static thread_local std::map<int, Polynomial> cache;
  auto it = cache.find(num_vars);
  if (it == cache.end()) it = cache.emplace(num_vars, Polynomial(num_vars)).first;
  return it->second;
}

const Polynomial& AlternatingTable::coefficient(const MultiIndex& idx) const {
  auto it = coeffs_.find(idx);
  if (it == coeffs_.end()) return zero_poly(num_vars_);
  return it->second;
}

void AlternatingTable::add_term(const MultiIndex& idx, const Polynomial& c) {
  if (static_cast<int>(idx.size()) != degree_)
    throw std::invalid_argument("multi-index length does not match degree");
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] >= idx[i + 1]) throw std::invalid_argument("multi-index not strictly increasing");
  if (!idx.empty() && (idx.front() < 0 || idx.back() >= num_vars_))
    throw std::invalid_argument("multi-index out of range");
  if (c.num_vars() != num_vars_) throw std::invalid_argument("coefficient num_vars mismatch");
  auto it = coeffs_.find(idx);
  if (it == coeffs_.end()) {
    if (!c.is_zero()) coeffs_.emplace(idx, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

bool AlternatingTable::equals(const AlternatingTable& rhs) const {
  return num_vars_ == rhs.num_vars_ && degree_ == rhs.degree_ && coeffs_ == rhs.coeffs_;
}

}  // namespace detail

PolyForm::PolyForm(int num_vars, int degree) : AlternatingTable(num_vars, degree) {}

PolyForm PolyForm::dx(int num_vars, int index) {
  PolyForm w(num_vars, 1);
  w.add_term({index}, Polynomial::constant(num_vars, Rational(1)));
  return w;
}

PolyForm PolyForm::from_covector(int num_vars, const std::vector<Polynomial>& comps) {
  if (static_cast<int>(comps.size()) != num_vars)
    throw std::invalid_argument("covector component count mismatch");
  PolyForm w(num_vars, 1);
  for (int i = 0; i < num_vars; ++i) w.add_term({i}, comps[i]);
  return w;
}

PolyForm PolyForm::operator+(const PolyForm& rhs) const {
  if (num_vars_ != rhs.num_vars_ || degree_ != rhs.degree_)
    throw std::invalid_argument("form shape mismatch in +");
  PolyForm r(*this);
  for (const auto& [idx, c] : rhs.coeffs_) r.add_term(idx, c);
  return r;
}

PolyForm PolyForm::operator-() const {
  PolyForm r(num_vars_, degree_);
  for (const auto& [idx, c] : coeffs_) r.add_term(idx, -c);
  return r;
}

PolyForm PolyForm::operator-(const PolyForm& rhs) const { return *this + (-rhs); }

PolyForm PolyForm::operator*(const Polynomial& f) const {
  PolyForm r(num_vars_, degree_);
  for (const auto& [idx, c] : coeffs_) r.add_term(idx, c * f);
  return r;
}

PolyMultiField::PolyMultiField(int num_vars, int degree) : AlternatingTable(num_vars, degree) {}

PolyMultiField PolyMultiField::from_field(const PolyVectorField& X) {
  PolyMultiField v(X.num_vars(), 1);
  for (int i = 0; i < X.num_vars(); ++i) v.add_term({i}, X.component(i));
  return v;
}

PolyMultiField PolyMultiField::operator+(const PolyMultiField& rhs) const {
  if (num_vars_ != rhs.num_vars_ || degree_ != rhs.degree_)
    throw std::invalid_argument("multivector shape mismatch in +");
  PolyMultiField r(*this);
  for (const auto& [idx, c] : rhs.coeffs_) r.add_term(idx, c);
  return r;
}

PolyMultiField PolyMultiField::operator-(const PolyMultiField& rhs) const {
  PolyMultiField neg(rhs.num_vars_, rhs.degree_);
  for (const auto& [idx, c] : rhs.coeffs_) neg.add_term(idx, -c);
  return *this + neg;
}

PolyVectorField PolyMultiField::to_field() const {
  if (degree_ != 1) throw std::logic_error("only degree-1 multivectors convert to fields");
  PolyVectorField X(num_vars_);
  for (const auto& [idx, c] : coeffs_) X.component(idx[0]) = c;
  return X;
}

namespace {

template <class T>
T wedge_impl(const T& a, const T& b) {
  if (a.num_vars() != b.num_vars()) throw std::invalid_argument("wedge dimension mismatch");
  T r(a.num_vars(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.coefficients()) {
    for (const auto& [ib, cb] : b.coefficients()) {
      MultiIndex merged;
      const int s = merge_sign(ia, ib, &merged);
      if (s == 0) continue;
      Polynomial c = ca * cb;
      if (s < 0) c = -c;
      r.add_term(merged, c);
    }
  }
  return r;
}

}  // namespace

PolyForm wedge(const PolyForm& a, const PolyForm& b) { return wedge_impl(a, b); }

PolyMultiField wedge(const PolyMultiField& a, const PolyMultiField& b) {
  return wedge_impl(a, b);
}

PolyMultiField wedge(const PolyVectorField& X, const PolyVectorField& Y) {
  return wedge_impl(PolyMultiField::from_field(X), PolyMultiField::from_field(Y));
}

PolyForm exterior_derivative(const PolyForm& omega) {
  if (omega.degree() >= omega.num_vars())
    throw std::invalid_argument("exterior derivative of a top-degree form");
  PolyForm r(omega.num_vars(), omega.degree() + 1);
  for (const auto& [idx, c] : omega.coefficients()) {
    for (int j = 0; j < omega.num_vars(); ++j) {
      Polynomial dc = c.derivative(j);
      if (dc.is_zero()) continue;
      MultiIndex merged;
      const int s = merge_sign({j}, idx, &merged);
      if (s == 0) continue;
      if (s < 0) dc = -dc;
      r.add_term(merged, dc);
    }
  }
  return r;
}

Polynomial pairing(const PolyMultiField& v, const PolyForm& alpha) {
  if (v.num_vars() != alpha.num_vars() || v.degree() != alpha.degree())
    throw std::invalid_argument("pairing shape mismatch");
  Polynomial acc(v.num_vars());
  for (const auto& [idx, c] : v.coefficients()) acc += c * alpha.coefficient(idx);
  return acc;
}

PolyMultiField interior_product(const PolyMultiField& v, const PolyForm& alpha) {
  if (v.num_vars() != alpha.num_vars())
    throw std::invalid_argument("interior product dimension mismatch");
  if (alpha.degree() > v.degree())
    throw std::invalid_argument("interior product degree mismatch (form degree exceeds vector)");
  const int out_degree = v.degree() - alpha.degree();
  PolyMultiField r(v.num_vars(), out_degree);
  // (v |_ alpha)_K = sum_{J disjoint from K, sort(J u K) = I} sign(J,K -> I) v_I alpha_J.
  for (const auto& [I, vc] : v.coefficients()) {
    for (const auto& [J, ac] : alpha.coefficients()) {
      // K = I \ J when J is a subset of I.
      MultiIndex K;
      K.reserve(out_degree);
      bool subset = true;
      std::size_t jj = 0;
      for (int e : I) {
        if (jj < J.size() && J[jj] == e) {
          ++jj;
        } else {
          K.push_back(e);
        }
      }
      subset = (jj == J.size());
      if (!subset) continue;
      MultiIndex merged;
      const int s = merge_sign(J, K, &merged);
      // merged == I by construction; s is the permutation sign of (J,K) -> I.
      Polynomial c = vc * ac;
      if (s < 0) c = -c;
      r.add_term(K, c);
    }
  }
  return r;
}

Polynomial apply(const PolyForm& omega, const PolyVectorField& X) {
  if (omega.degree() != 1) throw std::invalid_argument("apply: expected a 1-form");
  Polynomial acc(omega.num_vars());
  for (const auto& [idx, c] : omega.coefficients()) acc += c * X.component(idx[0]);
  return acc;
}

Polynomial apply(const PolyForm& omega, const PolyVectorField& X, const PolyVectorField& Y) {
  if (omega.degree() != 2) throw std::invalid_argument("apply: expected a 2-form");
  return pairing(wedge(X, Y), omega);
}

}  // namespace ccgeo::calc
