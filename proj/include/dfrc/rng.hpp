#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace dfrc {

/// Seeded generator with derivable sub-streams. Gaussians come from
/// Box-Muller on the raw integer stream, so outputs are identical for a
/// given seed regardless of the standard library in use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix(seed)) {}

  /// Independent sub-stream derived from this generator's seed.
  Rng stream(std::uint64_t id) const {
    return Rng(seed_ ^ mix(id + 0x9e3779b97f4a7c15ull));
  }

  // uniform on [0,1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // CN(0,1): unit-variance circularly-symmetric complex Gaussian
  std::complex<double> cgaussian() {
    const double s = 0.7071067811865476;
    double re = gaussian();
    double im = gaussian();
    return {s * re, s * im};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_ = 0;
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace dfrc
