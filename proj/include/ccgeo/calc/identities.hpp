#ifndef CCGEO_CALC_IDENTITIES_HPP
#define CCGEO_CALC_IDENTITIES_HPP

#include <string>
#include <vector>

#include "ccgeo/calc/form.hpp"

namespace ccgeo::calc {

struct IdentityCheck {
  std::string name;
  bool applicable = true;  // (c) needs omega(X) = omega(Y) = 0
  bool pass = false;
  std::string residual;  // exact polynomial residual, "0" on pass
};

struct IdentityReport {
  IdentityCheck weighted_commutator;   // [fX,gY] = fg[X,Y] + f<grad g,X>Y - g<grad f,Y>X
  IdentityCheck divergence_identity;   // signed form fixed by this implementation, see below
  IdentityCheck annihilator_identity;  // d omega(X^Y) = -omega([X,Y]) when omega(X)=omega(Y)=0
  bool all_pass() const;
};

// Evaluates the three structural identities exactly.
//
// With the standard bracket convention used throughout ([X,Y] = X.dY - Y.dX),
// the internally consistent signed divergence identity is
//   -div(X^Y |_ omega) = d omega(X^Y) + omega(Y) div X - omega(X) div Y + omega([X,Y]),
// which specialises, on the annihilator (omega(X)=omega(Y)=0), to
//   d omega(X^Y) = -omega([X,Y]).
IdentityReport check_structure_identities(const PolyVectorField& X, const PolyVectorField& Y,
                                          const Polynomial& f, const Polynomial& g,
                                          const PolyForm& omega);

}  // namespace ccgeo::calc

#endif
