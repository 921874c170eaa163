#include "vanhove/forms.hpp"

#include <algorithm>
#include <cmath>

#include "vanhove/errors.hpp"

namespace vanhove {

namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846;

double mode_knorm(const std::array<int, 3>& n, const LatticeSpec& lattice) {
  return lattice.spacing() *
         std::sqrt(double(n[0]) * n[0] + double(n[1]) * n[1] + double(n[2]) * n[2]);
}

// integral_lo^hi A(r) e^{i tau r^s} dr with origin refinement on the plain
// part and Filon panels once the phase turns over.
Complex shifted_radial_integral(const ScalarField& A, double tau, double s, double lo, double hi,
                                double scale, const QuadratureSpec& spec) {
  if (!(hi > lo)) return 0.0;
  if (tau == 0.0) {
    if (lo == 0.0) return integrate_from_origin(A, hi, spec);
    return integrate(A, lo, hi, spec);
  }
  // below delta the phase stays within one radian; plain quadrature with the
  // phase folded into the integrand is cheaper and keeps origin handling
  double delta = std::pow(1.0 / std::abs(tau), 1.0 / s);
  delta = std::min(delta, hi);
  ScalarField phased = [&](double r) {
    return A(r) * std::exp(Complex(0.0, tau * (r == 0.0 ? 0.0 : std::pow(r, s))));
  };
  Complex head = 0.0;
  if (delta > lo) {
    head = (lo == 0.0) ? integrate_from_origin(phased, delta, spec)
                       : integrate(phased, lo, delta, spec);
  } else {
    delta = lo;
  }
  Complex tail = 0.0;
  if (hi > delta) tail = oscillatory_integral(A, delta, hi, tau, s, scale, spec);
  return head + tail;
}

}  // namespace

Complex weighted_source_pairing(const LatticeFunction& f, const SourceCutoff& source,
                                const LatticeSpec& lattice, const Dispersion& disp,
                                const std::function<double(double)>& weight) {
  Complex out = 0.0;
  for (const auto& [n, fv] : f) {
    const double knorm = mode_knorm(n, lattice);
    const Complex rho = source.rho_hat(knorm);
    if (rho == Complex(0.0, 0.0)) continue;
    const double om = disp.omega(knorm);
    if (om == 0.0) throw ZeroModeError("source shell contains the zero mode");
    out += std::conj(rho) * fv * weight(om);
  }
  return out;
}

Complex mean_functional(const LatticeFunction& f, const SourceCutoff& source,
                        const LatticeSpec& lattice, const Dispersion& disp) {
  return weighted_source_pairing(f, source, lattice, disp,
                                 [](double om) { return std::pow(om, -1.5); });
}

double cocycle_functional(double t, const LatticeFunction& f, const SourceCutoff& source,
                          const LatticeSpec& lattice, const Dispersion& disp) {
  Complex out = 0.0;
  for (const auto& [n, fv] : f) {
    const double knorm = mode_knorm(n, lattice);
    const Complex rho = source.rho_hat(knorm);
    if (rho == Complex(0.0, 0.0)) continue;
    const double om = disp.omega(knorm);
    if (om == 0.0) throw ZeroModeError("source shell contains the zero mode");
    out += std::conj(rho) * (std::exp(Complex(0.0, t * om)) - 1.0) * fv * std::pow(om, -1.5);
  }
  return out.real();
}

Complex q_form(const LatticeFunction& f, const LatticeFunction& g, double beta,
               const LatticeSpec& lattice, const Dispersion& disp) {
  Complex out = 0.0;
  for (const auto& [n, fv] : f) {
    auto it = g.find(n);
    if (it == g.end()) continue;
    out += std::conj(fv) * it->second * disp.boson_kernel(mode_knorm(n, lattice), beta);
  }
  return out;
}

double q_nonzero(const LatticeFunction& f, double beta, const LatticeSpec& lattice,
                 const Dispersion& disp) {
  return q_form(f, f, beta, lattice, disp).real();
}

// ---------------------------------------------------------------------------

namespace {

// kernel value for the thermal cross integrals; x = beta (omega - mu)
double kernel_value(ThermalKernelKind kind, double beta, double om, double mu) {
  const double x = beta * (om - mu);
  switch (kind) {
    case ThermalKernelKind::one:
      return 1.0;
    case ThermalKernelKind::k_minus_one:
      return 2.0 / std::expm1(x);
    case ThermalKernelKind::k_plus_one:
      return 2.0 + 2.0 / std::expm1(x);
    case ThermalKernelKind::k_plus_one_damped:
      return (2.0 + 2.0 / std::expm1(x)) * std::exp(-x);
    case ThermalKernelKind::k_minus_one_boosted:
      // (K-1) e^{x}; guarded form for large x
      return x > 300.0 ? 2.0 / (1.0 - std::exp(-x)) : 2.0 * std::exp(x) / std::expm1(x);
  }
  return 0.0;
}

Complex pairwise_radial_form(const ContinuumFunction& f, const ContinuumFunction& g,
                             const ContinuumContext& ctx,
                             const std::function<double(double)>& kernel, double extra_time) {
  Complex out = 0.0;
  const double s = ctx.disp.s;
  for (const auto& tf : f.terms) {
    for (const auto& tg : g.terms) {
      const double tau = (tg.time_shift + extra_time) - tf.time_shift;
      const double hi = std::min(tf.profile->support_radius(), tg.profile->support_radius());
      if (!(hi > 0.0)) continue;
      const double scale = std::max(1e-6, 0.1 * hi);
      ScalarField amp = [&](double r) -> Complex {
        const Complex val = std::conj((*tf.profile)(r)) * (*tg.profile)(r);
        if (val == Complex(0.0, 0.0)) return 0.0;
        return kFourPi * r * r * val * kernel(r == 0.0 ? 0.0 : std::pow(r, s));
      };
      out += std::conj(tf.coeff) * tg.coeff *
             shifted_radial_integral(amp, tau, s, 0.0, hi, scale, ctx.quad);
    }
  }
  return out;
}

}  // namespace

Complex inner(const ContinuumFunction& f, const ContinuumFunction& g, const ContinuumContext& ctx) {
  return pairwise_radial_form(f, g, ctx, [](double) { return 1.0; }, 0.0);
}

double norm_squared(const ContinuumFunction& f, const ContinuumContext& ctx) {
  return inner(f, f, ctx).real();
}

Complex mean_functional(const ContinuumFunction& f, const SourceCutoff& source,
                        const ContinuumContext& ctx) {
  if (!source.active()) return 0.0;
  const double s = ctx.disp.s;
  const double power = 2.0 - 1.5 * s;
  Complex out = 0.0;
  for (const auto& term : f.terms) {
    const double hi = std::min(source.lambda, term.profile->support_radius());
    const double lo = source.kappa;
    if (!(hi > lo)) continue;
    ScalarField amp = [&](double r) -> Complex {
      if (r == 0.0) return 0.0;
      return kFourPi * std::pow(r, power) * (*term.profile)(r);
    };
    const double scale = std::max(1e-6, 0.1 * term.profile->support_radius());
    out += std::conj(source.amplitude) * term.coeff *
           shifted_radial_integral(amp, term.time_shift, s, lo, hi, scale, ctx.quad);
  }
  return out;
}

double cocycle_functional(double t, const ContinuumFunction& f, const SourceCutoff& source,
                          const ContinuumContext& ctx) {
  const Complex shifted = mean_functional(f.time_evolved(t), source, ctx);
  const Complex base = mean_functional(f, source, ctx);
  return (shifted - base).real();
}

Complex q_form(const ContinuumFunction& f, const ContinuumFunction& g, double beta,
               const ContinuumContext& ctx) {
  const Dispersion& d = ctx.disp;
  return pairwise_radial_form(
      f, g, ctx, [&](double om) { return 1.0 + 2.0 / std::expm1(beta * (om - d.mu)); }, 0.0);
}

double q_nonzero(const ContinuumFunction& f, double beta, const ContinuumContext& ctx) {
  return q_form(f, f, beta, ctx).real();
}

double q_zero(const ContinuumFunction& f, const CondensateParams& cond) {
  const Complex v0 = f.value_at_zero();
  return condensate_prefactor * cond.n0 * std::norm(v0);
}

Complex q_zero_form(const ContinuumFunction& f, const ContinuumFunction& g,
                    const CondensateParams& cond) {
  return condensate_prefactor * cond.n0 * std::conj(f.value_at_zero()) * g.value_at_zero();
}

double q_bec(const ContinuumFunction& f, const CondensateParams& cond,
             const ContinuumContext& ctx) {
  return q_zero(f, cond) + q_nonzero(f, cond.beta, ctx);
}

Complex thermal_cross_integral(const ContinuumFunction& f, const ContinuumFunction& g, double beta,
                               ThermalKernelKind kind, double extra_time,
                               const ContinuumContext& ctx) {
  const Dispersion& d = ctx.disp;
  return pairwise_radial_form(
      f, g, ctx, [&](double om) { return kernel_value(kind, beta, om, d.mu); }, extra_time);
}

// ---------------------------------------------------------------------------

namespace {

IrClassification classify_orders(Complex value_at_zero, double origin_order,
                                 const Dispersion& disp, IrExponentMode mode) {
  IrClassification out;
  out.in_x0 = value_at_zero != Complex(0.0, 0.0);
  const double a = out.in_x0 ? 0.0 : origin_order;
  if (mode == IrExponentMode::definition) {
    out.exponent = 1.5 * disp.s;
    // radial integrand behaves as r^{2 - p + a}; integrable iff the exponent
    // exceeds -1, with the logarithmic boundary case rejected
    if (2.0 - out.exponent + a > -1.0) {
      out.admissible = true;
    } else {
      out.reason = "integrand r^{2-p+a} with 2-p+a <= -1 diverges at the origin";
    }
  } else {
    out.exponent = disp.s;
    // order condition fhat(k) = O(|k|^{p-2})
    if (a >= out.exponent - 2.0) {
      out.admissible = true;
    } else {
      out.reason = "origin order below the required O(|k|^{p-2}) behavior";
    }
  }
  out.in_xphys = out.admissible;
  return out;
}

}  // namespace

IrClassification ir_classify(const RadialProfile& f, const Dispersion& disp, IrExponentMode mode) {
  return classify_orders(f.value_at_zero(), f.origin_order(), disp, mode);
}

IrClassification ir_classify(const ContinuumFunction& f, const Dispersion& disp,
                             IrExponentMode mode) {
  // a formal sum is admissible iff every term is; the weakest origin order
  // among terms with vanishing value dominates
  IrClassification out;
  out.in_x0 = f.value_at_zero() != Complex(0.0, 0.0);
  bool admissible = true;
  double exponent = 0.0;
  std::string reason;
  for (const auto& term : f.terms) {
    if (term.coeff == Complex(0.0, 0.0)) continue;
    IrClassification c = ir_classify(*term.profile, disp, mode);
    exponent = c.exponent;
    if (!c.admissible) {
      admissible = false;
      reason = c.reason;
    }
  }
  out.admissible = admissible;
  out.in_xphys = admissible;
  out.exponent = exponent;
  out.reason = reason;
  return out;
}

ShellIntegral ir_shell_integral(double kappa, double lambda, const Dispersion& disp) {
  ShellIntegral out;
  if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
  if (kappa >= lambda) return out;  // empty shell
  const double e = 2.0 - 3.0 * disp.s;
  const bool log_case = std::abs(e + 1.0) < 1e-14;
  if (kappa == 0.0 && e + 1.0 <= 0.0) {
    out.status = ShellStatus::infrared_divergent;
    return out;
  }
  if (std::isinf(lambda) && e + 1.0 >= 0.0) {
    out.status = ShellStatus::ultraviolet_divergent;
    return out;
  }
  if (log_case) {
    out.value = kFourPi * std::log(lambda / kappa);
  } else {
    const double p = e + 1.0;
    const double upper = std::isinf(lambda) ? 0.0 : std::pow(lambda, p);
    const double lower = kappa == 0.0 ? 0.0 : std::pow(kappa, p);
    out.value = kFourPi * (upper - lower) / p;
  }
  return out;
}

}  // namespace vanhove
