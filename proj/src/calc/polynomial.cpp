#include "ccgeo/calc/polynomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ccgeo::calc {

bool graded_lex_less(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial::Polynomial(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 0) throw std::invalid_argument("negative num_vars");
}

Polynomial Polynomial::constant(int num_vars, Rational c) {
  Polynomial p(num_vars);
  if (c != 0) p.terms_.push_back({std::move(c), std::vector<std::uint32_t>(num_vars, 0)});
  return p;
}

Polynomial Polynomial::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw std::invalid_argument("variable index out of range");
  std::vector<std::uint32_t> e(num_vars, 0);
  e[index] = 1;
  return monomial(num_vars, Rational(1), std::move(e));
}

Polynomial Polynomial::monomial(int num_vars, Rational c, std::vector<std::uint32_t> exps) {
  if (static_cast<int>(exps.size()) != num_vars)
    throw std::invalid_argument("exponent vector length mismatch");
  Polynomial p(num_vars);
  if (c != 0) p.terms_.push_back({std::move(c), std::move(exps)});
  return p;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  // Canonical order is graded descending, so the first term is maximal.
  const auto& e = terms_.front().exps;
  return static_cast<int>(std::accumulate(e.begin(), e.end(), std::uint64_t{0}));
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return graded_lex_less(b.exps, a.exps); });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exps == t.exps) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  terms_.clear();
  for (auto& t : merged)
    if (t.coeff != 0) terms_.push_back(std::move(t));
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  if (num_vars_ != rhs.num_vars_) throw std::invalid_argument("num_vars mismatch in +");
  Polynomial r(num_vars_);
  r.terms_ = terms_;
  r.terms_.insert(r.terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  r.normalize();
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  *this = *this + rhs;
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  *this = *this - rhs;
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (num_vars_ != rhs.num_vars_) throw std::invalid_argument("num_vars mismatch in *");
  Polynomial r(num_vars_);
  r.terms_.reserve(terms_.size() * rhs.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : rhs.terms_) {
      Term t;
      t.coeff = a.coeff * b.coeff;
      t.exps.resize(num_vars_);
      for (int i = 0; i < num_vars_; ++i) t.exps[i] = a.exps[i] + b.exps[i];
      r.terms_.push_back(std::move(t));
    }
  }
  r.normalize();
  return r;
}

Polynomial Polynomial::operator*(const Rational& s) const {
  Polynomial r(num_vars_);
  if (s == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff *= s;
  return r;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
  if (num_vars_ != rhs.num_vars_ || terms_.size() != rhs.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exps != rhs.terms_[i].exps || terms_[i].coeff != rhs.terms_[i].coeff)
      return false;
  }
  return true;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= num_vars_) throw std::invalid_argument("derivative index out of range");
  Polynomial r(num_vars_);
  for (const auto& t : terms_) {
    if (t.exps[var] == 0) continue;
    Term d;
    d.coeff = t.coeff * Rational(static_cast<long>(t.exps[var]));
    d.exps = t.exps;
    d.exps[var] -= 1;
    r.terms_.push_back(std::move(d));
  }
  r.normalize();
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != num_vars_)
    throw std::invalid_argument("evaluation point dimension mismatch");
  Rational acc(0);
  for (const auto& t : terms_) {
    Rational m = t.coeff;
    for (int i = 0; i < num_vars_; ++i) {
      for (std::uint32_t k = 0; k < t.exps[i]; ++k) m *= x[i];
    }
    acc += m;
  }
  return acc;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != num_vars_)
    throw std::invalid_argument("evaluation point dimension mismatch");
  double acc = 0.0;
  for (const auto& t : terms_) {
    double m = t.coeff.get_d();
    for (int i = 0; i < num_vars_; ++i) {
      for (std::uint32_t k = 0; k < t.exps[i]; ++k) m *= x[i];
    }
    acc += m;
  }
  return acc;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff.get_str();
    for (int i = 0; i < num_vars_; ++i) {
      if (t.exps[i] == 0) continue;
      os << "*x" << (i + 1);
      if (t.exps[i] > 1) os << "^" << t.exps[i];
    }
  }
  return os.str();
}

}  // namespace ccgeo::calc
