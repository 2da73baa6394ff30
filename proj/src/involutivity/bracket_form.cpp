#include "ccgeo/involutivity/bracket_form.hpp"

#include <cmath>
#include <stdexcept>

namespace ccgeo::involutivity {

bool BracketForm::all_zero(double tol) const {
  if (exact) {
    for (const auto& m : components_exact)
      if (!m.is_zero()) return false;
    return true;
  }
  for (const auto& m : components)
    if (m.cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

double BracketForm::norm() const {
  double acc = 0.0;
  for (const auto& m : components) acc += m.squaredNorm();
  return std::sqrt(acc);
}

BracketForm bracket_form(const ComplementedStructure& S, const Point& x) {
  const int n = S.n(), k = S.k();
  if (x.dim() != n) throw std::invalid_argument("bracket_form: point dimension mismatch");

  BracketForm B;
  B.base = x;
  B.k = k;
  B.complement_dim = n - k;
  B.exact = x.is_exact();
  B.components.assign(n - k, Eigen::MatrixXd::Zero(k, k));
  if (B.exact) B.components_exact.assign(n - k, RationalMatrix(k, k));

  if (B.exact) {
    const auto& xe = x.exact();
    const RationalMatrix F = S.frame_matrix_exact(std::span<const Rational>(xe));
    const auto Finv = inverse(F);
    if (!Finv) throw std::runtime_error("singular frame at the requested point");
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const auto br = calc::lie_bracket(S.distribution.frame[i], S.distribution.frame[j]);
        const auto v = br.evaluate(std::span<const Rational>(xe));
        // coefficients of [X_i,X_j](x) in the full frame basis
        for (int l = 0; l < n - k; ++l) {
          Rational coeff(0);
          for (int c = 0; c < n; ++c) coeff += (*Finv)(k + l, c) * v[c];
          B.components_exact[l](i, j) = coeff;
          B.components_exact[l](j, i) = -coeff;
          B.components[l](i, j) = coeff.get_d();
          B.components[l](j, i) = -coeff.get_d();
        }
      }
    }
    return B;
  }

  const auto xd = x.as_double();
  const Eigen::MatrixXd F = S.frame_matrix(std::span<const double>(xd));
  Eigen::FullPivLU<Eigen::MatrixXd> lu(F);
  if (!lu.isInvertible()) throw std::runtime_error("singular frame at the requested point");
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const auto br = calc::lie_bracket(S.distribution.frame[i], S.distribution.frame[j]);
      const auto v = br.evaluate(std::span<const double>(xd));
      const Eigen::VectorXd coeffs =
          lu.solve(Eigen::Map<const Eigen::VectorXd>(v.data(), n));
      for (int l = 0; l < n - k; ++l) {
        B.components[l](i, j) = coeffs(k + l);
        B.components[l](j, i) = -coeffs(k + l);
      }
    }
  }
  return B;
}

}  // namespace ccgeo::involutivity
