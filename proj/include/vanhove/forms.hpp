#pragma once

#include <string>

#include "vanhove/dispersion.hpp"
#include "vanhove/lattice.hpp"
#include "vanhove/quadrature.hpp"
#include "vanhove/radial.hpp"
#include "vanhove/source.hpp"

namespace vanhove {

// Condensate data entering q_0(f) = 2 (2 pi)^3 n0 |fhat(0)|^2.
struct CondensateParams {
  double beta = 1.0;
  double n0 = 0.0;
};

inline constexpr double condensate_prefactor = 2.0 * 248.05021344239853;  // 2 (2 pi)^3

// ---------------------------------------------------------------------------
// Bounded system (lattice sums)
// ---------------------------------------------------------------------------

// m_{kappa,Lambda}(f) = sum_k conj(rho_hat(k)) f_k / omega(k)^{3/2} over the
// source shell. Throws ZeroModeError when the shell reaches omega = 0.
Complex mean_functional(const LatticeFunction& f, const SourceCutoff& source,
                        const LatticeSpec& lattice, const Dispersion& disp);

// Generic pairing sum_k conj(rho_hat(k)) f_k w(omega_k); the mean functional
// is the w = omega^{-3/2} case, the displaced means use other weights.
Complex weighted_source_pairing(const LatticeFunction& f, const SourceCutoff& source,
                                const LatticeSpec& lattice, const Dispersion& disp,
                                const std::function<double(double)>& weight);

// M_t(f) = Re m((e^{i t omega} - 1) f)
double cocycle_functional(double t, const LatticeFunction& f, const SourceCutoff& source,
                          const LatticeSpec& lattice, const Dispersion& disp);

// Sesquilinear thermal form <f, coth(beta (omega - mu)/2) g>.
Complex q_form(const LatticeFunction& f, const LatticeFunction& g, double beta,
               const LatticeSpec& lattice, const Dispersion& disp);
double q_nonzero(const LatticeFunction& f, double beta, const LatticeSpec& lattice,
                 const Dispersion& disp);

// ---------------------------------------------------------------------------
// Infinite volume (radial quadrature)
// ---------------------------------------------------------------------------

struct ContinuumContext {
  Dispersion disp;
  QuadratureSpec quad;
};

Complex inner(const ContinuumFunction& f, const ContinuumFunction& g, const ContinuumContext& ctx);
double norm_squared(const ContinuumFunction& f, const ContinuumContext& ctx);

Complex mean_functional(const ContinuumFunction& f, const SourceCutoff& source,
                        const ContinuumContext& ctx);
double cocycle_functional(double t, const ContinuumFunction& f, const SourceCutoff& source,
                          const ContinuumContext& ctx);

Complex q_form(const ContinuumFunction& f, const ContinuumFunction& g, double beta,
               const ContinuumContext& ctx);
double q_nonzero(const ContinuumFunction& f, double beta, const ContinuumContext& ctx);

double q_zero(const ContinuumFunction& f, const CondensateParams& cond);
Complex q_zero_form(const ContinuumFunction& f, const ContinuumFunction& g,
                    const CondensateParams& cond);
double q_bec(const ContinuumFunction& f, const CondensateParams& cond,
             const ContinuumContext& ctx);

// General thermal cross integral used by the dynamics:
//   4 pi int r^2 conj(fhat) ghat kernel(omega) e^{i tau omega} dr
// with kernel one of {1, K-1, K+1, (K+1)e^{-beta omega}, (K-1)e^{beta omega}}.
enum class ThermalKernelKind { one, k_minus_one, k_plus_one, k_plus_one_damped, k_minus_one_boosted };
Complex thermal_cross_integral(const ContinuumFunction& f, const ContinuumFunction& g, double beta,
                               ThermalKernelKind kind, double extra_time,
                               const ContinuumContext& ctx);

// ---------------------------------------------------------------------------
// Infrared admissibility
// ---------------------------------------------------------------------------

// Exponent convention for the infrared singularity of the mean functional's
// integrand |k|^{-p}: `definition` takes p = 3s/2 from the defining integral;
// `theorem_literal` takes p = s and tests the order condition
// fhat(k) = O(|k|^{p-2}) instead of bare integrability.
enum class IrExponentMode { definition, theorem_literal };

struct IrClassification {
  bool admissible = false;
  bool in_x0 = false;     // fhat(0) != 0 (carries condensate)
  bool in_xphys = false;  // member of dom m
  double exponent = 0.0;  // the p actually used
  std::string reason;     // empty when admissible
};

IrClassification ir_classify(const RadialProfile& f, const Dispersion& disp,
                             IrExponentMode mode = IrExponentMode::definition);
IrClassification ir_classify(const ContinuumFunction& f, const Dispersion& disp,
                             IrExponentMode mode = IrExponentMode::definition);

// ---------------------------------------------------------------------------
// Infrared regularization integral 4 pi int_kappa^Lambda r^{2-3s} dr
// ---------------------------------------------------------------------------

enum class ShellStatus { finite, infrared_divergent, ultraviolet_divergent };

struct ShellIntegral {
  ShellStatus status = ShellStatus::finite;
  double value = 0.0;
};

ShellIntegral ir_shell_integral(double kappa, double lambda, const Dispersion& disp);

}  // namespace vanhove
