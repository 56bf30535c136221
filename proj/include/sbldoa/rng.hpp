#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace sbldoa {

// Seeded PRNG used throughout the toolkit. Wraps std::mt19937_64 with fixed
// bit-to-double mappings (53-bit uniforms, Box-Muller normals) so a stream
// depends only on the seed, not on the standard library's distribution
// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal; the second Box-Muller variate is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Circularly symmetric complex normal with E|z|^2 = variance.
  std::complex<double> complex_gaussian(double variance) {
    const double scale = std::sqrt(0.5 * variance);
    const double re = scale * gaussian();
    const double im = scale * gaussian();
    return {re, im};
  }

  // Raw 64-bit draw, used to derive independent sub-stream seeds.
  std::uint64_t next_seed() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sbldoa
