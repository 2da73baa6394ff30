#ifndef CCGEO_CALC_POLYNOMIAL_HPP
#define CCGEO_CALC_POLYNOMIAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccgeo/support/rational.hpp"

namespace ccgeo::calc {

// One monomial: coefficient times prod_i x_i^exps[i].
struct Term {
  Rational coeff;
  std::vector<std::uint32_t> exps;
};

// Multivariate polynomial with exact rational coefficients.
//
// Terms are kept in canonical form: graded-lexicographic descending order,
// no duplicate exponent vectors, no zero coefficients. Equality is therefore
// structural and "residual == 0" is a bit-exact test.
class Polynomial {
 public:
  Polynomial() : num_vars_(0) {}
  explicit Polynomial(int num_vars);

  static Polynomial zero(int num_vars) { return Polynomial(num_vars); }
  static Polynomial constant(int num_vars, Rational c);
  static Polynomial variable(int num_vars, int index);
  static Polynomial monomial(int num_vars, Rational c, std::vector<std::uint32_t> exps);

  int num_vars() const { return num_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Total degree; -1 for the zero polynomial.
  int total_degree() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);

  Polynomial operator*(const Rational& s) const;

  bool operator==(const Polynomial& rhs) const;
  bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

  Polynomial derivative(int var) const;

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;

  std::string to_string() const;  // human-readable, for reports and errors

 private:
  void normalize();

  int num_vars_;
  std::vector<Term> terms_;
};

inline Polynomial operator*(const Rational& s, const Polynomial& p) { return p * s; }

// Graded-lex order on exponent vectors (true when a comes after b, i.e. a < b).
bool graded_lex_less(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);

}  // namespace ccgeo::calc

#endif
