#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace vanhove {

// Deterministic draws for the randomized suites; identical streams for
// identical seeds, independent of standard-library distribution details.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  double uniform() {  // [0, 1)
    return double(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double sign() { return (next() & 1) ? 1.0 : -1.0; }

  double normal() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  std::complex<double> complex_normal(double scale) {
    const double re = normal();
    const double im = normal();
    return {scale * re / std::sqrt(2.0), scale * im / std::sqrt(2.0)};
  }

 private:
  std::uint64_t next() {  // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace vanhove
