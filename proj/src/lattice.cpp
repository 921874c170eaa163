#include "vanhove/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace vanhove {

std::vector<LatticeMode> lattice_modes(const LatticeSpec& spec) {
  if (std::isinf(spec.lambda))
    throw UnboundedShellError("lattice enumeration requires a finite ultraviolet cutoff");
  std::vector<LatticeMode> out;
  if (spec.lambda < spec.kappa) return out;
  const double a = spec.spacing();
  const int nmax = int(std::floor(spec.lambda / a)) + 1;
  for (int i = -nmax; i <= nmax; ++i) {
    for (int j = -nmax; j <= nmax; ++j) {
      for (int k = -nmax; k <= nmax; ++k) {
        const double knorm = a * std::sqrt(double(i) * i + double(j) * j + double(k) * k);
        if (knorm > spec.lambda) continue;
        if (knorm == 0.0) {
          if (spec.kappa == 0.0 && spec.include_zero_mode)
            out.push_back({{i, j, k}, 0.0});
          continue;
        }
        if (knorm < spec.kappa) continue;
        out.push_back({{i, j, k}, knorm});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const LatticeMode& x, const LatticeMode& y) {
    if (x.knorm != y.knorm) return x.knorm < y.knorm;
    return x.n < y.n;
  });
  return out;
}

LatticeFunction time_evolve(const LatticeFunction& f, double t, const LatticeSpec& spec,
                            const Dispersion& disp) {
  LatticeFunction out;
  const double a = spec.spacing();
  for (const auto& [n, fv] : f) {
    const double knorm =
        a * std::sqrt(double(n[0]) * n[0] + double(n[1]) * n[1] + double(n[2]) * n[2]);
    out[n] = fv * std::exp(Complex(0.0, t * disp.omega(knorm)));
  }
  return out;
}

}  // namespace vanhove
