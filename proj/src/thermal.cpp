#include "vanhove/thermal.hpp"

#include <cmath>

#include "vanhove/errors.hpp"

namespace vanhove {

namespace {

const LatticeFunction* as_lattice(const Direction& f) { return std::get_if<LatticeFunction>(&f); }

const ContinuumFunction& as_continuum(const Direction& f) {
  const auto* c = std::get_if<ContinuumFunction>(&f);
  if (!c) throw DomainError("expected a continuum direction");
  return *c;
}

void require_bounded(const Direction& f, const ThermalParams& p, const char* what) {
  if (p.continuum || !as_lattice(f))
    throw DomainError(std::string(what) + " is defined for the bounded system only");
}

void require_admissible_for_removed_cutoff(const ContinuumFunction& f, const ThermalParams& p) {
  if (p.source.active() && p.source.kappa == 0.0) {
    IrClassification c = ir_classify(f, p.dispersion);
    if (!c.admissible)
      throw InadmissibleFunctionError("direction is outside dom m with the infrared cutoff removed: " +
                                      c.reason);
  }
}

double displacement_weight(double om, const ThermalParams& p) {
  if (p.displacement == DisplacementConvention::paper_literal || p.dispersion.mu == 0.0)
    return std::pow(om, -1.5);
  return 1.0 / ((om - p.dispersion.mu) * std::sqrt(om));
}

struct ModeData {
  double omega;
  Complex c;  // conj(f_k) g_k
};

// per-mode cross data for the pair-correlation machinery (bounded case)
std::vector<ModeData> cross_modes(const LatticeFunction& f, const LatticeFunction& g,
                                  const ThermalParams& p) {
  std::vector<ModeData> out;
  const double a = p.lattice.spacing();
  for (const auto& [n, fv] : f) {
    auto it = g.find(n);
    if (it == g.end()) continue;
    const double knorm =
        a * std::sqrt(double(n[0]) * n[0] + double(n[1]) * n[1] + double(n[2]) * n[2]);
    out.push_back({p.dispersion.omega(knorm), std::conj(fv) * it->second});
  }
  return out;
}

}  // namespace

Complex mean(const Direction& f, const ThermalParams& p) {
  if (const auto* lf = as_lattice(f))
    return mean_functional(*lf, p.source, p.lattice, p.dispersion);
  const ContinuumFunction& cf = as_continuum(f);
  require_admissible_for_removed_cutoff(cf, p);
  return mean_functional(cf, p.source, p.context());
}

Complex displaced_mean(const Direction& f, const ThermalParams& p) {
  if (const auto* lf = as_lattice(f))
    return weighted_source_pairing(*lf, p.source, p.lattice, p.dispersion,
                                   [&](double om) { return displacement_weight(om, p); });
  // continuum states are used at mu = 0, where the conventions agree
  return mean(f, p);
}

double cocycle(double t, const Direction& f, const ThermalParams& p) {
  if (const auto* lf = as_lattice(f))
    return cocycle_functional(t, *lf, p.source, p.lattice, p.dispersion);
  const ContinuumFunction& cf = as_continuum(f);
  require_admissible_for_removed_cutoff(cf, p);
  return cocycle_functional(t, cf, p.source, p.context());
}

double q_total(const Direction& f, const ThermalParams& p) {
  if (const auto* lf = as_lattice(f)) return q_nonzero(*lf, p.beta, p.lattice, p.dispersion);
  const ContinuumFunction& cf = as_continuum(f);
  return q_nonzero(cf, p.beta, p.context()) + q_zero(cf, p.condensate_at_beta());
}

Complex q_total_form(const Direction& f, const Direction& g, const ThermalParams& p) {
  if (const auto* lf = as_lattice(f)) {
    const auto* lg = std::get_if<LatticeFunction>(&g);
    if (!lg) throw DomainError("mixed direction kinds in q form");
    return q_form(*lf, *lg, p.beta, p.lattice, p.dispersion);
  }
  const ContinuumFunction& cf = as_continuum(f);
  const ContinuumFunction& cg = as_continuum(g);
  return q_form(cf, cg, p.beta, p.context()) + q_zero_form(cf, cg, p.condensate_at_beta());
}

Complex direction_inner(const Direction& f, const Direction& g, const ThermalParams& p) {
  SymplecticSpace space{p.context()};
  return space.inner(f, g);
}

Direction evolve_direction(double t, const Direction& f, const ThermalParams& p) {
  if (const auto* lf = as_lattice(f)) return time_evolve(*lf, t, p.lattice, p.dispersion);
  return as_continuum(f).time_evolved(t);
}

OnePointFunctions one_point_functions(const Direction& f, const ThermalParams& p) {
  require_bounded(f, p, "the one-point function");
  const Complex pairing = displaced_mean(f, p);
  OnePointFunctions out;
  out.creation = -pairing / std::sqrt(2.0);
  out.annihilation = -std::conj(pairing) / std::sqrt(2.0);
  out.segal = -pairing.real();
  return out;
}

Complex one_point_segal(const Direction& f, const ThermalParams& p) {
  return one_point_functions(f, p).segal;
}

Complex two_point_segal(const Direction& f, const Direction& g, const ThermalParams& p) {
  require_bounded(f, p, "the two-point function");
  require_bounded(g, p, "the two-point function");
  const Complex q = q_total_form(f, g, p);
  const Complex ip = direction_inner(f, g, p);
  const double mf = displaced_mean(f, p).real();
  const double mg = displaced_mean(g, p).real();
  return 0.5 * Complex(q.real(), ip.imag()) + mf * mg;
}

Complex weyl_expectation(const Direction& f, const ThermalParams& p) {
  if (const auto* lf = as_lattice(f)) {
    const double q = q_nonzero(*lf, p.beta, p.lattice, p.dispersion);
    const double phase = displaced_mean(f, p).real();
    return std::exp(Complex(-0.25 * q, -phase));
  }
  const ContinuumFunction& cf = as_continuum(f);
  require_admissible_for_removed_cutoff(cf, p);
  const double q = q_nonzero(cf, p.beta, p.context());
  const double q0 = q_zero(cf, p.condensate_at_beta());
  const double phase = mean(f, p).real();
  return std::exp(Complex(-0.25 * (q + q0), -phase));
}

Complex weyl_expectation(const WeylWord& w, const ThermalParams& p) {
  return w.phase * weyl_expectation(w.direction, p);
}

Complex weyl_two_point(const Direction& f, const Direction& g, const ThermalParams& p) {
  SymplecticSpace space{p.context()};
  const WeylWord word = multiply(weyl_generator(f), weyl_generator(g), space);
  return weyl_expectation(word, p);
}

WeylWord automorphism_apply(double t, const WeylWord& w, const ThermalParams& p) {
  WeylWord out;
  out.phase = w.phase * std::exp(Complex(0.0, cocycle(t, w.direction, p)));
  out.direction = evolve_direction(t, w.direction, p);
  return out;
}

Complex weyl_pair_correlation(const Direction& f, const Direction& g, double t,
                              const ThermalParams& p) {
  SymplecticSpace space{p.context()};
  const WeylWord evolved = automorphism_apply(t, weyl_generator(g), p);
  const WeylWord word = multiply(weyl_generator(f), evolved, space);
  return weyl_expectation(word, p);
}

Complex weyl_pair_correlation_reversed(const Direction& f, const Direction& g, double t,
                                       const ThermalParams& p) {
  SymplecticSpace space{p.context()};
  const WeylWord evolved = automorphism_apply(t, weyl_generator(g), p);
  const WeylWord word = multiply(evolved, weyl_generator(f), space);
  return weyl_expectation(word, p);
}

Complex weyl_pair_correlation_shifted(const Direction& f, const Direction& g, double t,
                                      const ThermalParams& p) {
  if (p.dispersion.mu != 0.0)
    throw DomainError("complex-time correlations are defined at mu = 0");
  // log F(t) = base - (1/4)[J_+(t) + J_-(t)],
  //   J_+(t) = <f, (K+1) e^{i t omega} g>,  J_-(t) = conj(<f, (K-1) e^{i t omega} g>),
  // continued by e^{i t omega} -> e^{i t omega} e^{-beta omega} wherever the
  // automorphism shift appears.
  const double mf = mean(f, p).real();
  const double mg = mean(g, p).real();
  const double qf = q_total(f, p);
  const double qg = q_total(g, p);
  Complex cross;
  if (const auto* lf = as_lattice(f)) {
    const auto* lg = std::get_if<LatticeFunction>(&g);
    if (!lg) throw DomainError("mixed direction kinds");
    Complex jp = 0.0, jm = 0.0;
    for (const ModeData& m : cross_modes(*lf, *lg, p)) {
      const double x = p.beta * m.omega;
      if (!(x > 0.0)) throw ZeroModeError("pair correlation requires omega > 0 on shared modes");
      const double k_minus = 2.0 / std::expm1(x);
      const double k_plus = 2.0 + k_minus;
      const Complex rot = std::exp(Complex(0.0, m.omega * t));
      jp += (k_plus * std::exp(-x)) * m.c * rot;
      // (K-1) e^{x} evaluated in guarded form
      const double boosted = x > 300.0 ? 2.0 : 2.0 * std::exp(x) / std::expm1(x);
      jm += boosted * std::conj(m.c) * std::conj(rot);
    }
    cross = jp + jm;
  } else {
    const ContinuumFunction& cf = as_continuum(f);
    const ContinuumFunction& cg = as_continuum(g);
    const ContinuumContext ctx = p.context();
    const Complex jp =
        thermal_cross_integral(cf, cg, p.beta, ThermalKernelKind::k_plus_one_damped, t, ctx);
    const Complex jm =
        thermal_cross_integral(cg, cf, p.beta, ThermalKernelKind::k_minus_one_boosted, -t, ctx);
    cross = jp + jm;
    // zero-mode condensate cross term: e^{i t omega(0)} = 1 identically, so
    // the continuation leaves it untouched
    cross += 2.0 * q_zero_form(cf, cg, p.condensate_at_beta());
  }
  const Complex exponent =
      Complex(0.0, -(mf + mg)) - 0.25 * (qf + qg) - 0.25 * cross;
  return std::exp(exponent);
}

double kms_residual(const Direction& f, const Direction& g, double t, const ThermalParams& p) {
  const Complex lhs = weyl_pair_correlation_shifted(f, g, t, p);
  const Complex rhs = weyl_pair_correlation_reversed(f, g, t, p);
  return std::abs(lhs - rhs);
}

std::vector<double> cluster_diagnostic(const Direction& f, const Direction& g,
                                       std::span<const double> t_grid, const ThermalParams& p) {
  const Complex product = weyl_expectation(f, p) * weyl_expectation(g, p);
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid)
    out.push_back(std::abs(weyl_pair_correlation(f, g, t, p) - product));
  return out;
}

SelectionResult selection_functional(const Direction& f, const ThermalParams& p) {
  SelectionResult out;
  const double a = mean(f, p).real();
  // psi(phi(f)) = -i d/dt psi(W(tf))|_0; the closed form gives exactly -Re m(f)
  out.analytic = Complex(-a, 0.0) + a;
  const double h = 1e-4;
  auto fd = [&](double step) {
    const Complex plus = weyl_expectation(scale_direction(step, f), p);
    const Complex minus = weyl_expectation(scale_direction(-step, f), p);
    return Complex(0.0, -1.0) * (plus - minus) / (2.0 * step);
  };
  const Complex d1 = fd(h);
  const Complex d2 = fd(0.5 * h);
  out.finite_difference = d1 + a;
  out.richardson = (4.0 * d2 - d1) / 3.0 + a;
  return out;
}

SweepResult cutoff_removal_sweep(const ContinuumFunction& f, std::span<const double> kappas,
                                 std::span<const double> lambdas, const ThermalParams& p,
                                 double tolerance) {
  if (kappas.size() != lambdas.size() || kappas.empty())
    throw DomainError("cutoff sweep needs matching nonempty schedules");
  SweepResult out;
  const ContinuumContext ctx = p.context();
  // the thermal form does not carry cutoffs; only the mean functional does
  const double q = q_nonzero(f, p.beta, ctx) + q_zero(f, p.condensate_at_beta());
  const double gauss = std::exp(-0.25 * q);
  for (std::size_t j = 0; j < kappas.size(); ++j) {
    const SourceCutoff cut = p.source.with_shell(kappas[j], lambdas[j]);
    const Complex phase = mean_functional(f, cut, ctx);
    const Complex value = gauss * std::exp(Complex(0.0, -phase.real()));
    if (!out.points.empty())
      out.increments.push_back(std::abs(value - out.points.back().value));
    out.points.push_back({kappas[j], lambdas[j], value});
  }
  out.monotone = true;
  for (std::size_t j = 1; j < out.increments.size(); ++j)
    if (out.increments[j] > out.increments[j - 1]) out.monotone = false;
  out.cauchy = !out.increments.empty() && out.increments.back() < tolerance && out.monotone;
  const IrClassification cls = ir_classify(f, p.dispersion);
  out.admissible = cls.admissible;
  if (cls.admissible) {
    ThermalParams limit_params = p;
    limit_params.continuum = true;
    limit_params.source = p.source.with_shell(0.0, std::numeric_limits<double>::infinity());
    out.limit = weyl_expectation(Direction{f}, limit_params);
    out.limit_error = std::abs(out.points.back().value - out.limit);
  }
  return out;
}

}  // namespace vanhove
