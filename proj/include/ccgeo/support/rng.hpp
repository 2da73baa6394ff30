#ifndef CCGEO_SUPPORT_RNG_HPP
#define CCGEO_SUPPORT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string>

namespace ccgeo {

// Deterministic, platform-independent generator (splitmix64). std:: engines
// are avoided on purpose: distribution implementations vary across standard
// libraries and every verdict here must be reproducible bit-for-bit from the
// master seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; deterministic across platforms.
  double normal() {
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  int int_in(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

// Derives per-task seeds from a master seed and a stable tag. Tags keep
// subsystem streams independent; restart indices extend the tag.
inline std::uint64_t derive_seed(std::uint64_t master, const std::string& tag,
                                 std::uint64_t index = 0) {
  std::uint64_t h = 1469598103934665603ULL ^ master;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= index + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace ccgeo

#endif
