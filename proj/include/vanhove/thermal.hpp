#pragma once

#include <span>
#include <vector>

#include "vanhove/weyl.hpp"

namespace vanhove {

// Displacement convention for mu != 0. The dressing transformation that
// diagonalizes the interacting Hamiltonian displaces each mode by
// rho_hat/((omega - mu) sqrt(omega)); the printed formulas use
// rho_hat/omega^{3/2} independent of mu. Both coincide at mu = 0.
enum class DisplacementConvention { mu_corrected, paper_literal };

struct ThermalParams {
  double beta = 1.0;
  Dispersion dispersion{1.0, 0.0};
  SourceCutoff source{};
  bool continuum = false;
  LatticeSpec lattice{};          // bounded systems only
  CondensateParams condensate{};  // continuum only; beta is taken from `beta`
  QuadratureSpec quadrature{};
  DisplacementConvention displacement = DisplacementConvention::mu_corrected;

  ContinuumContext context() const { return {dispersion, quadrature}; }
  CondensateParams condensate_at_beta() const { return {beta, condensate.n0}; }
};

// ---------------------------------------------------------------------------
// forms lifted to Direction
// ---------------------------------------------------------------------------

Complex mean(const Direction& f, const ThermalParams& p);            // <m, f>
Complex displaced_mean(const Direction& f, const ThermalParams& p);  // convention-weighted
double cocycle(double t, const Direction& f, const ThermalParams& p);  // M_t(f)
double q_total(const Direction& f, const ThermalParams& p);  // q_nonzero (+ q_0 in continuum)
Complex q_total_form(const Direction& f, const Direction& g, const ThermalParams& p);
Complex direction_inner(const Direction& f, const Direction& g, const ThermalParams& p);
Direction evolve_direction(double t, const Direction& f, const ThermalParams& p);

// ---------------------------------------------------------------------------
// expectation functionals
// ---------------------------------------------------------------------------

struct OnePointFunctions {
  Complex creation;
  Complex annihilation;
  Complex segal;
};

// bounded systems only
OnePointFunctions one_point_functions(const Direction& f, const ThermalParams& p);
Complex one_point_segal(const Direction& f, const ThermalParams& p);
Complex two_point_segal(const Direction& f, const Direction& g, const ThermalParams& p);

// psi(W(f)); continuum with kappa = 0 demands an admissible direction
Complex weyl_expectation(const Direction& f, const ThermalParams& p);
Complex weyl_expectation(const WeylWord& w, const ThermalParams& p);
Complex weyl_two_point(const Direction& f, const Direction& g, const ThermalParams& p);

// alpha_t(phase W(f)) = phase e^{i M_t(f)} W(e^{i t omega} f)
WeylWord automorphism_apply(double t, const WeylWord& w, const ThermalParams& p);

// ---------------------------------------------------------------------------
// dynamics: pair correlations, KMS, clustering
// ---------------------------------------------------------------------------

// F(t) = psi(W(f) alpha_t(W(g))) via the reduced word (exercises the cocycle)
Complex weyl_pair_correlation(const Direction& f, const Direction& g, double t,
                              const ThermalParams& p);
// G(t) = psi(alpha_t(W(g)) W(f))
Complex weyl_pair_correlation_reversed(const Direction& f, const Direction& g, double t,
                                       const ThermalParams& p);
// F(t + i beta): the entire continuation of the explicit Gaussian formula,
// obtained by the substitution e^{i t omega} -> e^{i t omega} e^{-beta omega}
Complex weyl_pair_correlation_shifted(const Direction& f, const Direction& g, double t,
                                      const ThermalParams& p);

// |F(t + i beta) - G(t)|; requires mu = 0 (where the dynamics matches the state)
double kms_residual(const Direction& f, const Direction& g, double t, const ThermalParams& p);

// D(t) = |psi(W(f) alpha_t(W(g))) - psi(W(f)) psi(W(g))| on a time grid
std::vector<double> cluster_diagnostic(const Direction& f, const Direction& g,
                                       std::span<const double> t_grid, const ThermalParams& p);

// ---------------------------------------------------------------------------
// selection criterion and cutoff removal
// ---------------------------------------------------------------------------

struct SelectionResult {
  Complex analytic;           // psi(phi(f)) + Re m(f) from the exact derivative
  Complex finite_difference;  // same with a central-difference derivative
  Complex richardson;         // step-halved Richardson extrapolation
};

SelectionResult selection_functional(const Direction& f, const ThermalParams& p);

struct SweepPoint {
  double kappa;
  double lambda;
  Complex value;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<double> increments;  // |psi_{j+1} - psi_j|
  bool cauchy = false;
  bool monotone = false;
  Complex limit{0.0, 0.0};    // closed form at kappa = 0, Lambda = inf (admissible only)
  double limit_error = 0.0;   // |last point - limit|
  bool admissible = false;
};

SweepResult cutoff_removal_sweep(const ContinuumFunction& f, std::span<const double> kappas,
                                 std::span<const double> lambdas, const ThermalParams& p,
                                 double tolerance);

}  // namespace vanhove
