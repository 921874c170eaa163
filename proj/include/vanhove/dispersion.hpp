#pragma once

#include <array>
#include <cmath>

#include "vanhove/errors.hpp"

namespace vanhove {

// Dispersion relation omega_s(k) = |k|^s in d = 3, together with the chemical
// potential. Every consumer requires omega(k) - mu > 0 on the modes it
// actually uses; that is checked at the point of use, not here, because the
// admissible mu range depends on the mode set.
struct Dispersion {
  double s = 1.0;
  double mu = 0.0;

  Dispersion() = default;
  Dispersion(double s_, double mu_ = 0.0) : s(s_), mu(mu_) {
    if (!(s >= 1.0)) throw DomainError("dispersion exponent must satisfy s >= 1");
  }

  double omega(double knorm) const { return knorm == 0.0 ? 0.0 : std::pow(knorm, s); }

  double omega(const std::array<double, 3>& k) const {
    return omega(std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]));
  }

  // coth(beta (omega - mu) / 2); the caller guarantees omega - mu > 0.
  double boson_kernel(double knorm, double beta) const {
    double x = beta * (omega(knorm) - mu);
    if (!(x > 0.0)) throw ZeroModeError("coth kernel requires omega(k) - mu > 0");
    return 1.0 + 2.0 / std::expm1(x);
  }
};

}  // namespace vanhove
