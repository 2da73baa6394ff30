#ifndef CCGEO_SUPPORT_RATIONAL_HPP
#define CCGEO_SUPPORT_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ccgeo {

// Exact rational scalar used by all symbolic computations.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

// mpq_class(num, den) does not canonicalize; comparisons on non-canonical
// values are wrong. Always build ratios through here.
inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p/q", plain integers and plain decimals ("-0.25" -> -1/4).
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpz_class num(text.substr(0, slash));
    mpz_class den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("bad rational literal '" + text + "'");
    mpz_class num(digits);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  return Rational(mpz_class(text));
}

}  // namespace ccgeo

#endif
