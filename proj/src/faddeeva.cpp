#include "vanhove/faddeeva.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "vanhove/errors.hpp"

namespace vanhove {

namespace {

constexpr int kN = 40;
constexpr double kPi = 3.14159265358979323846;

struct WeidemanTable {
  double L;
  std::array<double, kN> a;  // polynomial coefficients, highest degree first
};

// Chebyshev-like expansion coefficients of exp(-t^2)(L^2 + t^2) under the
// rational map; computed once by a direct DFT.
WeidemanTable build_table() {
  WeidemanTable tab{};
  const int M = 2 * kN;
  const int M2 = 2 * M;
  tab.L = std::sqrt(kN / std::sqrt(2.0));
  // samples f_j, j = 0..M2-1 with f_0 = 0, f_{j} = exp(-t^2)(L^2+t^2) at
  // t = L tan(theta/2), theta = (j - M) pi / M for j = 1..M2-1
  std::array<double, 2 * 2 * kN> f{};
  f[0] = 0.0;
  for (int j = 1; j < M2; ++j) {
    const double theta = (j - M) * kPi / M;
    const double t = tab.L * std::tan(0.5 * theta);
    f[j] = std::exp(-t * t) * (tab.L * tab.L + t * t);
  }
  // a_k = Re( (1/M2) sum_j fftshift(f)_j e^{-2 pi i j k / M2} ), k = 1..N
  for (int k = 1; k <= kN; ++k) {
    double re = 0.0;
    for (int j = 0; j < M2; ++j) {
      const int shifted = (j + M) % M2;  // fftshift
      const double ang = -2.0 * kPi * double(j) * double(k) / double(M2);
      re += f[shifted] * std::cos(ang);
    }
    tab.a[kN - k] = re / double(M2);  // highest degree first
  }
  return tab;
}

const WeidemanTable& table() {
  static const WeidemanTable tab = build_table();
  return tab;
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (z.imag() < 0.0)
    throw DomainError("faddeeva_w implemented for the closed upper half-plane only");
  const WeidemanTable& tab = table();
  const std::complex<double> iz(- z.imag(), z.real());  // i z
  const std::complex<double> denom = tab.L - iz;
  const std::complex<double> Z = (tab.L + iz) / denom;
  std::complex<double> p = 0.0;
  for (int k = 0; k < kN; ++k) p = p * Z + tab.a[k];
  return 2.0 * p / (denom * denom) + (1.0 / std::sqrt(kPi)) / denom;
}

std::complex<double> erfcx(std::complex<double> w) {
  if (w.real() < 0.0) throw DomainError("erfcx implemented for Re w >= 0 only");
  // erfcx(w) = wofz(i w); i w lies in the upper half-plane for Re w >= 0
  return faddeeva_w(std::complex<double>(-w.imag(), w.real()));
}

}  // namespace vanhove
