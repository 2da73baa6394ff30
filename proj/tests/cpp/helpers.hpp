#ifndef CCGEO_TESTS_HELPERS_HPP
#define CCGEO_TESTS_HELPERS_HPP

#include <map>
#include <vector>

#include "ccgeo/calc/field.hpp"
#include "ccgeo/calc/form.hpp"
#include "ccgeo/support/rng.hpp"

namespace ccgeo_tests {

using ccgeo::Rational;
using ccgeo::Rng;
using ccgeo::calc::PolyForm;
using ccgeo::calc::Polynomial;
using ccgeo::calc::PolyVectorField;

inline Rational random_small_rational(Rng& rng) {
  const long num = static_cast<long>(rng.int_in(-9, 9));
  const long den = static_cast<long>(rng.int_in(1, 4));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Polynomial random_polynomial(Rng& rng, int num_vars, int max_degree, int max_terms = 4) {
  Polynomial p(num_vars);
  const int terms = rng.int_in(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(num_vars, 0);
    int budget = rng.int_in(0, max_degree);
    while (budget > 0) {
      e[rng.int_in(0, num_vars - 1)] += 1;
      --budget;
    }
    p += Polynomial::monomial(num_vars, random_small_rational(rng), e);
  }
  return p;
}

inline PolyVectorField random_field(Rng& rng, int num_vars, int max_degree) {
  PolyVectorField X(num_vars);
  for (int j = 0; j < num_vars; ++j) X.component(j) = random_polynomial(rng, num_vars, max_degree);
  return X;
}

inline PolyForm random_one_form(Rng& rng, int num_vars, int max_degree) {
  std::vector<Polynomial> comps;
  for (int j = 0; j < num_vars; ++j) comps.push_back(random_polynomial(rng, num_vars, max_degree));
  return PolyForm::from_covector(num_vars, comps);
}

// Independent symbolic oracle for Lie brackets: a deliberately naive
// exponent-map representation with its own multiply/differentiate code path,
// kept free of the production Polynomial class internals.
namespace naive {

using Poly = std::map<std::vector<std::uint32_t>, Rational>;

inline Poly from_production(const Polynomial& p) {
  Poly out;
  for (const auto& t : p.terms()) out[t.exps] = t.coeff;
  return out;
}

inline void add_term(Poly& p, std::vector<std::uint32_t> e, const Rational& c) {
  auto it = p.find(e);
  if (it == p.end()) {
    if (c != 0) p.emplace(std::move(e), c);
    return;
  }
  it->second += c;
  if (it->second == 0) p.erase(it);
}

inline Poly mul(const Poly& a, const Poly& b, int n) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<std::uint32_t> e(n);
      for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      add_term(out, std::move(e), ca * cb);
    }
  return out;
}

inline Poly diff(const Poly& a, int var) {
  Poly out;
  for (const auto& [e, c] : a) {
    if (e[var] == 0) continue;
    auto e2 = e;
    e2[var] -= 1;
    add_term(out, std::move(e2), c * Rational(static_cast<long>(e[var])));
  }
  return out;
}

// [X,Y]^j = sum_i X_i d_i Y^j - Y_i d_i X^j, expanded with the naive engine.
inline std::vector<Poly> bracket(const PolyVectorField& X, const PolyVectorField& Y) {
  const int n = X.num_vars();
  std::vector<Poly> xs, ys;
  for (int j = 0; j < n; ++j) {
    xs.push_back(from_production(X.component(j)));
    ys.push_back(from_production(Y.component(j)));
  }
  std::vector<Poly> out(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (const auto& [e, c] : mul(xs[i], diff(ys[j], i), n)) add_term(out[j], e, c);
      for (const auto& [e, c] : mul(ys[i], diff(xs[j], i), n)) add_term(out[j], e, -c);
    }
  }
  return out;
}

inline bool matches(const std::vector<Poly>& oracle, const PolyVectorField& produced) {
  for (int j = 0; j < produced.num_vars(); ++j) {
    if (oracle[j] != from_production(produced.component(j))) return false;
  }
  return true;
}

}  // namespace naive

// Heisenberg frame in R^3: X1 = d_x - (y/2) d_t, X2 = d_y + (x/2) d_t.
inline PolyVectorField heisenberg_x1() {
  PolyVectorField X(3);
  X.component(0) = Polynomial::constant(3, Rational(1));
  X.component(2) = Polynomial::monomial(3, Rational(-1, 2), {0, 1, 0});
  return X;
}

inline PolyVectorField heisenberg_x2() {
  PolyVectorField X(3);
  X.component(1) = Polynomial::constant(3, Rational(1));
  X.component(2) = Polynomial::monomial(3, Rational(1, 2), {1, 0, 0});
  return X;
}

// Annihilator omega = (y/2) dx - (x/2) dy + dt.
inline PolyForm heisenberg_annihilator() {
  std::vector<Polynomial> comps(3, Polynomial(3));
  comps[0] = Polynomial::monomial(3, Rational(1, 2), {0, 1, 0});
  comps[1] = Polynomial::monomial(3, Rational(-1, 2), {1, 0, 0});
  comps[2] = Polynomial::constant(3, Rational(1));
  return PolyForm::from_covector(3, comps);
}

}  // namespace ccgeo_tests

#endif
