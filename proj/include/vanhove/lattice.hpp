#pragma once

#include <array>
#include <complex>
#include <limits>
#include <map>
#include <vector>

#include "vanhove/dispersion.hpp"
#include "vanhove/errors.hpp"

namespace vanhove {

using Complex = std::complex<double>;

// Momentum shell of the bounded system: the Fourier modes (2 pi / L) n,
// n in Z^3, with kappa <= |k| <= lambda.
struct LatticeSpec {
  double box_length = 2.0 * 3.14159265358979323846;  // L
  double kappa = 0.0;
  double lambda = std::numeric_limits<double>::infinity();
  bool include_zero_mode = false;

  double spacing() const { return 2.0 * 3.14159265358979323846 / box_length; }
};

struct LatticeMode {
  std::array<int, 3> n;
  double knorm;
};

// Enumerates the shell; deterministic order (by |k|, then lexicographic n).
// The zero mode is included only if kappa == 0 and include_zero_mode is set.
std::vector<LatticeMode> lattice_modes(const LatticeSpec& spec);

// Finite-support test function in the orthonormal Fourier basis, keyed by the
// integer lattice vector n (k = (2 pi / L) n).
using LatticeFunction = std::map<std::array<int, 3>, Complex>;

inline Complex inner(const LatticeFunction& f, const LatticeFunction& g) {
  Complex out = 0.0;
  for (const auto& [n, fv] : f) {
    auto it = g.find(n);
    if (it != g.end()) out += std::conj(fv) * it->second;
  }
  return out;
}

inline double norm_squared(const LatticeFunction& f) { return inner(f, f).real(); }

inline LatticeFunction add(const LatticeFunction& f, const LatticeFunction& g) {
  LatticeFunction out = f;
  for (const auto& [n, gv] : g) out[n] += gv;
  return out;
}

inline LatticeFunction scale(Complex c, const LatticeFunction& f) {
  LatticeFunction out;
  for (const auto& [n, fv] : f) out[n] = c * fv;
  return out;
}

// Free time evolution e^{i t omega} f, applied eagerly per mode.
LatticeFunction time_evolve(const LatticeFunction& f, double t, const LatticeSpec& spec,
                            const Dispersion& disp);

}  // namespace vanhove
