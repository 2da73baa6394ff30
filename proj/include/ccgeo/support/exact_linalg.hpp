#ifndef CCGEO_SUPPORT_EXACT_LINALG_HPP
#define CCGEO_SUPPORT_EXACT_LINALG_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "ccgeo/support/rational.hpp"

namespace ccgeo {

// Dense matrix over the rationals, row-major. Sized for the small systems
// that show up here (frames, bracket forms); no pivot-growth heroics needed
// since arithmetic is exact.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  RationalMatrix transposed() const {
    RationalMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RationalMatrix operator*(const RationalMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    RationalMatrix r(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rational& aik = (*this)(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < rhs.cols_; ++j) r(i, j) += aik * rhs(k, j);
      }
    return r;
  }

  RationalMatrix operator-(const RationalMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw std::invalid_argument("matrix difference shape mismatch");
    RationalMatrix r(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] - rhs.a_[i];
    return r;
  }

  bool operator==(const RationalMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (v != 0) return false;
    return true;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

int rank(RationalMatrix m);

// Solves A x = b; empty optional when singular/inconsistent (square A only).
std::optional<std::vector<Rational>> solve(RationalMatrix A, std::vector<Rational> b);

// Inverse of a square matrix; empty when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& A);

}  // namespace ccgeo

#endif
