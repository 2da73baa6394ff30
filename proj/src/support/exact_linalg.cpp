#include "ccgeo/support/exact_linalg.hpp"

namespace ccgeo {

int rank(RationalMatrix m) {
  const int rows = m.rows(), cols = m.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < cols; ++j) std::swap(m(r, j), m(pivot, j));
    for (int i = r + 1; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      const Rational factor = m(i, c) / m(r, c);
      for (int j = c; j < cols; ++j) m(i, j) -= factor * m(r, j);
    }
    ++r;
  }
  return r;
}

std::optional<std::vector<Rational>> solve(RationalMatrix A, std::vector<Rational> b) {
  const int n = A.rows();
  if (A.cols() != n || static_cast<int>(b.size()) != n)
    throw std::invalid_argument("solve expects a square system");
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int i = c; i < n; ++i) {
      if (A(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(A(c, j), A(pivot, j));
      std::swap(b[c], b[pivot]);
    }
    for (int i = c + 1; i < n; ++i) {
      if (A(i, c) == 0) continue;
      const Rational factor = A(i, c) / A(c, c);
      for (int j = c; j < n; ++j) A(i, j) -= factor * A(c, j);
      b[i] -= factor * b[c];
    }
  }
  std::vector<Rational> x(n, Rational(0));
  for (int i = n - 1; i >= 0; --i) {
    Rational acc = b[i];
    for (int j = i + 1; j < n; ++j) acc -= A(i, j) * x[j];
    x[i] = acc / A(i, i);
  }
  return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& A) {
  const int n = A.rows();
  if (A.cols() != n) throw std::invalid_argument("inverse expects a square matrix");
  RationalMatrix work = A;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int i = c; i < n; ++i) {
      if (work(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) {
        std::swap(work(c, j), work(pivot, j));
        std::swap(inv(c, j), inv(pivot, j));
      }
    }
    const Rational d = work(c, c);
    for (int j = 0; j < n; ++j) {
      work(c, j) /= d;
      inv(c, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || work(i, c) == 0) continue;
      const Rational factor = work(i, c);
      for (int j = 0; j < n; ++j) {
        work(i, j) -= factor * work(c, j);
        inv(i, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace ccgeo
