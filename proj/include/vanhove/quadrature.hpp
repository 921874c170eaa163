#pragma once

#include <complex>
#include <functional>

namespace vanhove {

using Complex = std::complex<double>;

// Tolerances for all continuum (radial) integrals. Acceptance is
// self-convergence: panel estimates must agree under refinement to within
// these thresholds, and origin panels must decay geometrically.
struct QuadratureSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_depth = 52;
  // geometric panels [R 2^{-j-1}, R 2^{-j}] toward r = 0
  int max_origin_levels = 60;
  // contribution ratio above which the origin tail is declared divergent
  double divergence_ratio = 0.98;
};

using ScalarField = std::function<Complex(double)>;

// Adaptive Gauss-Kronrod (G7/K15) on a finite interval.
Complex integrate(const ScalarField& f, double a, double b, const QuadratureSpec& spec);

// integral_0^R f(r) dr where f may carry an integrable power singularity at
// r = 0. Panels are refined geometrically toward the origin; throws
// QuadratureDivergence when the panel contributions fail to decay.
Complex integrate_from_origin(const ScalarField& f, double upper, const QuadratureSpec& spec);

// integral_a^b A(r) e^{i t r^s} dr by the substitution u = r^s followed by
// adaptive Filon panels (quadratic amplitude, exact oscillatory moments).
// scale_hint sets the initial panel mesh; it should be the smallest feature
// size of A. Degenerates gracefully to plain quadrature for small |t|.
Complex oscillatory_integral(const ScalarField& A, double a, double b, double t, double s,
                             double scale_hint, const QuadratureSpec& spec);

}  // namespace vanhove
