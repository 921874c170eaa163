#pragma once

#include <complex>
#include <limits>

#include "vanhove/lattice.hpp"

namespace vanhove {

// Point source with infrared/ultraviolet cutoffs: rho_hat(k) = amplitude on
// the shell kappa <= |k| <= lambda, zero elsewhere.
struct SourceCutoff {
  double kappa = 0.0;
  double lambda = std::numeric_limits<double>::infinity();
  Complex amplitude{1.0, 0.0};

  Complex rho_hat(double knorm) const {
    return (knorm >= kappa && knorm <= lambda) ? amplitude : Complex(0.0, 0.0);
  }

  bool active() const { return amplitude != Complex(0.0, 0.0) && kappa <= lambda; }

  SourceCutoff with_shell(double k, double l) const { return SourceCutoff{k, l, amplitude}; }
};

}  // namespace vanhove
