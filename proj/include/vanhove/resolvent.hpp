#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "vanhove/fock.hpp"
#include "vanhove/thermal.hpp"

namespace vanhove {

// Generator R(z, f) with z off the imaginary axis; the scaling relation
// nu R(nu z, nu f) = R(z, f) gives the normal form used to orient integrals.
struct ResolventGenerator {
  Complex z;
  Direction direction;

  ResolventGenerator(Complex z_, Direction f);
};

// Formal product of generators with a scalar prefactor.
struct ResolventExpression {
  std::vector<ResolventGenerator> factors;
  Complex prefactor{1.0, 0.0};
};

// adjoint reverses factors and maps (z, f) -> (-conj z, f)
ResolventExpression adjoint(const ResolventExpression& expr);

// alpha_t(R(z, f)) = R(z + i M_t(f), e^{i t omega} f)
ResolventGenerator automorphism_apply(double t, const ResolventGenerator& r,
                                      const ThermalParams& p);
ResolventExpression automorphism_apply(double t, const ResolventExpression& expr,
                                       const ThermalParams& p);

// ---------------------------------------------------------------------------
// expectation values
// ---------------------------------------------------------------------------

// psi(R(z, f)) = -i int_0^{sgn(Re z) inf} exp(-(z - i Re m(f)) t - t^2 q(f)/4) dt,
// evaluated through the scaled complementary error function.
Complex resolvent_expectation(Complex z, const Direction& f, const ThermalParams& p);
// the same value by adaptive half-line quadrature (second opinion)
Complex resolvent_expectation_quadrature(Complex z, const Direction& f, const ThermalParams& p);
// the same value by integrating psi(W(-tf)) through the Weyl functional
Complex resolvent_expectation_laplace(Complex z, const Direction& f, const ThermalParams& p);

// psi(R(z,f) R(w,g)) by 2D quadrature of the Gaussian integrand
Complex resolvent_two_point(Complex z, const Direction& f, Complex w, const Direction& g,
                            const ThermalParams& p);

// closed forms exist for products of at most two generators
Complex expectation(const ResolventExpression& expr, const ThermalParams& p);

// KMS check for resolvent generators via the Laplace transform of the
// Weyl-level residual; bounded directions, mu = 0.
double resolvent_kms_residual(double lambda, const Direction& f, double mu_, const Direction& g,
                              double t, const ThermalParams& p);

// closed form of int_0^inf exp(-p t - (q/4) t^2) dt for Re p > 0, q >= 0
Complex half_line_gaussian_laplace(Complex p, double q);

// ---------------------------------------------------------------------------
// ideal structure
// ---------------------------------------------------------------------------

struct DirectionClass {
  bool in_xphys = false;  // dom m membership
  bool in_x0 = false;     // fhat(0) != 0
};

DirectionClass classify_direction(const ContinuumFunction& f, const Dispersion& disp,
                                  IrExponentMode mode = IrExponentMode::definition);

enum class QuotientStatus { in_physical_algebra, in_ideal };

// generator-level quotient by the infrared ideal: any factor outside X_phys
// puts the whole product in the ideal; the empty product is the unit
QuotientStatus quotient_project(const ResolventExpression& expr, const Dispersion& disp,
                                IrExponentMode mode = IrExponentMode::definition);

// ---------------------------------------------------------------------------
// relation suite in the Fock representation
// ---------------------------------------------------------------------------

struct RelationReport {
  std::map<std::string, double> max_residuals;
  int draws = 0;
  bool pass(double tolerance, double same_direction_tolerance) const;
};

struct RelationSuiteConfig {
  int draws = 100;
  int low_block = 5;          // occupation cut for residual norms
  double amplitude = 0.2;     // per-component scale of f, g
  double lambda_min = 0.8;    // |Re z| lower bound for draws
  double lambda_max = 2.5;
  double sum_min = 0.8;       // |lambda + mu| lower bound (product relation)
};

// verifies all seven resolvent relations, and their complex extension, on
// random draws; residual norms are taken on the low-occupation block
RelationReport relation_suite(const fock::TruncationSpec& spec, const RelationSuiteConfig& cfg,
                              std::uint64_t seed);

// Weyl relation W(f)W(g) = e^{-(i/2) Im<f,g>} W(f+g) against oracle matrices,
// together with the symbolic reduction of random words
RelationReport weyl_relation_suite(const fock::TruncationSpec& spec,
                                   const RelationSuiteConfig& cfg, std::uint64_t seed);

}  // namespace vanhove
