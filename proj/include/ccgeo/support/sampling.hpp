#ifndef CCGEO_SUPPORT_SAMPLING_HPP
#define CCGEO_SUPPORT_SAMPLING_HPP

#include <vector>

namespace ccgeo {

// Halton quasi-random sequence in [0,1)^dim (1-based index keeps the origin out).
inline double halton(std::size_t index, int base) {
  double f = 1.0, r = 0.0;
  std::size_t i = index;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

inline std::vector<double> halton_point(std::size_t index, int dim) {
  static constexpr int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                   31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  std::vector<double> p(dim);
  for (int d = 0; d < dim; ++d) p[d] = halton(index, primes[d % 20]);
  return p;
}

// Point of the scaled sequence inside the box [lo,hi]^dim.
inline std::vector<double> halton_in_box(std::size_t index, int dim, double lo, double hi) {
  auto p = halton_point(index, dim);
  for (auto& v : p) v = lo + (hi - lo) * v;
  return p;
}

}  // namespace ccgeo

#endif
