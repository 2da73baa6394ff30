#include "ccgeo/calc/identities.hpp"

#include <stdexcept>

namespace ccgeo::calc {

bool IdentityReport::all_pass() const {
  return weighted_commutator.pass && divergence_identity.pass &&
         (!annihilator_identity.applicable || annihilator_identity.pass);
}

namespace {

std::string field_residual_string(const PolyVectorField& R) {
  if (R.is_zero()) return "0";
  std::string s = "(";
  for (int j = 0; j < R.num_vars(); ++j) {
    if (j) s += ", ";
    s += R.component(j).to_string();
  }
  return s + ")";
}

}  // namespace

IdentityReport check_structure_identities(const PolyVectorField& X, const PolyVectorField& Y,
                                          const Polynomial& f, const Polynomial& g,
                                          const PolyForm& omega) {
  const int n = X.num_vars();
  if (Y.num_vars() != n || f.num_vars() != n || g.num_vars() != n || omega.num_vars() != n)
    throw std::invalid_argument("identity inputs must share num_vars");
  if (omega.degree() != 1) throw std::invalid_argument("omega must be a 1-form");

  IdentityReport report;

  // (a) weighted commutator.
  {
    const PolyVectorField lhs = lie_bracket(f * X, g * Y);
    const PolyVectorField rhs = (f * g) * lie_bracket(X, Y) +
                                (f * directional_derivative(g, X)) * Y -
                                (g * directional_derivative(f, Y)) * X;
    const PolyVectorField residual = lhs - rhs;
    report.weighted_commutator = {"weighted_commutator", true, residual.is_zero(),
                                  field_residual_string(residual)};
  }

  const Polynomial omega_X = apply(omega, X);
  const Polynomial omega_Y = apply(omega, Y);
  const Polynomial d_omega_XY = apply(exterior_derivative(omega), X, Y);
  const Polynomial omega_bracket = apply(omega, lie_bracket(X, Y));

  // (b) divergence identity in the signed form consistent with the standard
  // bracket convention (frozen as a regression; see module docs).
  {
    const PolyVectorField hooked = interior_product(wedge(X, Y), omega).to_field();
    const Polynomial lhs = -divergence(hooked);
    const Polynomial rhs =
        d_omega_XY + omega_Y * divergence(X) - omega_X * divergence(Y) + omega_bracket;
    const Polynomial residual = lhs - rhs;
    report.divergence_identity = {"divergence_identity", true, residual.is_zero(),
                                  residual.to_string()};
  }

  // (c) annihilator identity, applicable when omega kills both fields exactly.
  {
    IdentityCheck c;
    c.name = "annihilator_identity";
    c.applicable = omega_X.is_zero() && omega_Y.is_zero();
    if (c.applicable) {
      const Polynomial residual = d_omega_XY + omega_bracket;
      c.pass = residual.is_zero();
      c.residual = residual.to_string();
    } else {
      c.pass = false;
      c.residual = "not applicable: omega does not annihilate X and Y";
    }
    report.annihilator_identity = std::move(c);
  }

  return report;
}

}  // namespace ccgeo::calc
