#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vanhove/errors.hpp"
#include "vanhove/fock.hpp"
#include "vanhove/rng.hpp"
#include "vanhove/thermal.hpp"

using namespace vanhove;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kInf = std::numeric_limits<double>::infinity();

// bounded single-mode setup: L = 2 pi, mode (1,0,0), omega = 1, shell source
ThermalParams single_mode_params(double beta, double rho_amp, double mu = 0.0) {
  ThermalParams p;
  p.beta = beta;
  p.dispersion = Dispersion(1.0, mu);
  p.source = SourceCutoff{0.5, 1.5, Complex(rho_amp, 0.0)};
  p.lattice = LatticeSpec{2.0 * kPi, 0.0, kInf, false};
  return p;
}

LatticeFunction unit_mode(Complex v = Complex(1.0, 0.0)) {
  LatticeFunction f;
  f[{1, 0, 0}] = v;
  return f;
}

}  // namespace

TEST_CASE("one-point functions") {
  const ThermalParams p = single_mode_params(1.0, 1.0);
  const Direction f{unit_mode()};
  // single mode omega = 1, rho = 1, f = 1 -> -1
  CHECK(one_point_segal(f, p).real() == doctest::Approx(-1.0).epsilon(1e-14));
  // free field: 0
  const ThermalParams free = single_mode_params(1.0, 0.0);
  CHECK(std::abs(one_point_segal(f, free)) == 0.0);
  // purely imaginary f against a real displacement: Segal one-point vanishes
  CHECK(std::abs(one_point_segal(Direction{unit_mode(Complex(0.0, 2.0))}, p)) == 0.0);
  // creation/annihilation variants
  const OnePointFunctions one = one_point_functions(f, p);
  CHECK(one.creation.real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(one.annihilation.real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("two-point function") {
  const ThermalParams p = single_mode_params(1.0, 1.0);
  const Direction f{unit_mode()};
  // 0.5 coth(1/2) + 1 = 2.0819767068693264
  CHECK(two_point_segal(f, f, p).real() == doctest::Approx(2.0819767068693264).epsilon(1e-14));
  CHECK(std::abs(two_point_segal(f, f, p).imag()) == 0.0);

  // antisymmetric part equals i Im<f,g> exactly
  const Direction g{unit_mode(Complex(0.3, 0.8))};
  const Complex fg = two_point_segal(f, g, p);
  const Complex gf = two_point_segal(g, f, p);
  const Complex comm = fg - gf;
  CHECK(comm.real() == doctest::Approx(0.0));
  CHECK(comm.imag() == doctest::Approx(direction_inner(f, g, p).imag()));

  // free diagonal: q/2 real
  const ThermalParams free = single_mode_params(1.0, 0.0);
  CHECK(two_point_segal(f, f, free).real() ==
        doctest::Approx(0.5 * 2.1639534137386528).epsilon(1e-14));
}

TEST_CASE("weyl expectation bounded") {
  const Direction f{unit_mode()};
  // free single mode beta = 1: e^{-coth(1/2)/4}
  const ThermalParams free = single_mode_params(1.0, 0.0);
  CHECK(weyl_expectation(f, free).real() ==
        doctest::Approx(0.5821725756700977).epsilon(1e-14));
  // W(0) = 1
  CHECK(weyl_expectation(Direction{LatticeFunction{}}, free) == Complex(1.0, 0.0));
  // |psi(W(f))| <= 1 and the source only contributes a phase
  const ThermalParams with_source = single_mode_params(1.0, 1.0);
  const Complex value = weyl_expectation(f, with_source);
  CHECK(std::abs(value) <= 1.0);
  CHECK(std::abs(value) == doctest::Approx(0.5821725756700977).epsilon(1e-14));
  // factorization: psi_vH / psi_free = e^{-i Re<m,f>}
  const Complex ratio = value / weyl_expectation(f, free);
  CHECK(std::abs(ratio - std::exp(Complex(0.0, -1.0))) < 1e-14);
}

TEST_CASE("weyl two-point reduces through the word algebra") {
  const ThermalParams p = single_mode_params(1.0, 1.0);
  const Direction f{unit_mode(Complex(0.4, 0.1))};
  const Direction g{unit_mode(Complex(-0.3, 0.6))};
  // g = -f gives psi(1) = 1
  CHECK(std::abs(weyl_two_point(f, negate(f), p) - Complex(1.0, 0.0)) < 1e-14);
  // orthogonal real modes: product rule without symplectic phase
  LatticeFunction f1, g1;
  f1[{1, 0, 0}] = 0.7;
  g1[{0, 1, 0}] = -0.4;
  const Complex lhs = weyl_two_point(Direction{f1}, Direction{g1}, p);
  const Complex rhs = weyl_expectation(Direction{add(f1, g1)}, p);
  CHECK(std::abs(lhs - rhs) < 1e-15);
  (void)g;
}

TEST_CASE("automorphism action") {
  const ThermalParams p = single_mode_params(1.0, 1.0);
  const WeylWord w = weyl_generator(Direction{unit_mode()});
  // t = 0 is the identity
  const WeylWord w0 = automorphism_apply(0.0, w, p);
  CHECK(std::abs(w0.phase - w.phase) == 0.0);
  // t = pi at omega = 1: phase e^{-2i}, direction -f
  const WeylWord wpi = automorphism_apply(kPi, w, p);
  CHECK(std::abs(wpi.phase - std::exp(Complex(0.0, -2.0))) < 1e-13);
  const auto& dir = std::get<LatticeFunction>(wpi.direction);
  CHECK(std::abs(dir.at({1, 0, 0}) - Complex(-1.0, 0.0)) < 1e-13);

  // group law on random draws, phases compared exactly
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = rng.uniform(-3.0, 3.0);
    const double u = rng.uniform(-3.0, 3.0);
    const WeylWord one = automorphism_apply(t + u, w, p);
    const WeylWord two = automorphism_apply(t, automorphism_apply(u, w, p), p);
    CHECK(std::abs(one.phase - two.phase) < 1e-12);
    const auto& d1 = std::get<LatticeFunction>(one.direction);
    const auto& d2 = std::get<LatticeFunction>(two.direction);
    CHECK(std::abs(d1.at({1, 0, 0}) - d2.at({1, 0, 0})) < 1e-12);
  }

  // stationarity of the state under the automorphism
  for (double t : {0.3, -1.7, 2.9}) {
    const WeylWord moved = automorphism_apply(t, w, p);
    CHECK(std::abs(weyl_expectation(moved, p) - weyl_expectation(w, p)) < 1e-10);
  }
}

TEST_CASE("KMS residual bounded") {
  Rng rng(13);
  // free single mode, f = g = 1, t = 0
  const ThermalParams free = single_mode_params(1.0, 0.0);
  const Direction f{unit_mode()};
  CHECK(kms_residual(f, f, 0.0, free) < 1e-10);

  // with source, random times, two modes
  ThermalParams p = single_mode_params(1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    LatticeFunction a, b;
    a[{1, 0, 0}] = rng.complex_normal(0.9);
    a[{1, 1, 0}] = rng.complex_normal(0.9);
    b[{1, 0, 0}] = rng.complex_normal(0.9);
    b[{0, 1, 1}] = rng.complex_normal(0.9);
    p.beta = rng.uniform(0.5, 2.0);
    p.source.lambda = 2.5;
    const double t = rng.uniform(-2.0, 2.0);
    CHECK(kms_residual(Direction{a}, Direction{b}, t, p) <= 1e-8);
  }

  // B = identity (g = 0): residual vanishes identically
  CHECK(kms_residual(f, Direction{LatticeFunction{}}, 0.77, p) < 1e-15);

  // mu != 0 is rejected for the complex-time machinery
  const ThermalParams with_mu = single_mode_params(1.0, 1.0, -0.3);
  CHECK_THROWS_AS(kms_residual(f, f, 0.1, with_mu), DomainError);
}

TEST_CASE("KMS residual continuum with condensate") {
  ThermalParams p;
  p.beta = 1.2;
  p.dispersion = Dispersion(1.0, 0.0);
  p.source = SourceCutoff{0.0, kInf, Complex(1.0, 0.0)};
  p.continuum = true;
  p.condensate.n0 = 0.5 / condensate_prefactor;
  const Direction f{ContinuumFunction(RadialProfile::gaussian(Complex(0.8, 0.2), 0.7))};
  const Direction g{ContinuumFunction(RadialProfile::poly_gaussian(2.0, Complex(0.5, -0.6), 1.0))};
  for (double t : {0.0, 0.9, -1.6}) {
    CHECK(kms_residual(f, g, t, p) <= 1e-8);
  }
}

TEST_CASE("oracle agreement at mu != 0 picks the corrected displacement") {
  // grand canonical trace at mu < 0 against both displacement conventions
  const double mu = -0.4;
  const double beta = 1.1;
  ThermalParams p = single_mode_params(beta, 1.0, mu);
  const Direction f{unit_mode(Complex(0.6, -0.2))};

  const fock::TruncationSpec spec = fock::make_truncation({1.0}, 48);
  const auto report = fock::gc_expectation(
      [&](const fock::TruncationSpec& t) {
        LatticeFunction lf;
        lf[t.modes[0].n] = Complex(0.6, -0.2);
        return fock::segal_field(lf, t).mat;
      },
      spec, p.dispersion, p.source, beta);

  p.displacement = DisplacementConvention::mu_corrected;
  const double corrected = one_point_segal(f, p).real();
  p.displacement = DisplacementConvention::paper_literal;
  const double literal = one_point_segal(f, p).real();

  CHECK(std::abs(corrected - report.value.real()) < 1e-8);
  CHECK(std::abs(literal - report.value.real()) > 1e-3);
}

TEST_CASE("selection functional") {
  ThermalParams p;
  p.beta = 1.0;
  p.dispersion = Dispersion(1.0, 0.0);
  p.source = SourceCutoff{0.0, kInf, Complex(1.0, 0.0)};
  p.continuum = true;
  Rng rng(21);
  for (int j = 0; j < 10; ++j) {
    ContinuumFunction f(
        RadialProfile::gaussian(rng.complex_normal(1.0), rng.uniform(0.5, 1.4)));
    // keep the mean-functional scale O(1): the central difference carries a
    // truncation term cubic in Re m(f)
    const double a = mean(Direction{f}, p).real();
    if (std::abs(a) > 2.0) f = f.scaled(2.0 / std::abs(a));
    const SelectionResult sel = selection_functional(Direction{f}, p);
    CHECK(std::abs(sel.analytic) <= 1e-10);
    CHECK(std::abs(sel.finite_difference) <= 1e-7);
    CHECK(std::abs(sel.richardson) <= 1e-7);
  }
  // zero source: both contributions vanish separately
  p.source.amplitude = 0.0;
  const ContinuumFunction f(RadialProfile::gaussian(Complex(1.0, 0.0), 1.0));
  CHECK(std::abs(mean(Direction{f}, p)) == 0.0);
  CHECK(std::abs(selection_functional(Direction{f}, p).analytic) == 0.0);
}

TEST_CASE("cluster diagnostic dichotomy") {
  ThermalParams p;
  p.beta = 1.0;
  p.dispersion = Dispersion(1.0, 0.0);
  p.source = SourceCutoff{0.0, kInf, Complex(1.0, 0.0)};
  p.continuum = true;
  const Direction f{ContinuumFunction(RadialProfile::gaussian(Complex(1.0, 0.0), 0.5))};
  const std::vector<double> grid = {0.0, 10.0, 40.0, 100.0};

  // g = 0 -> D identically zero
  const auto zero = cluster_diagnostic(f, Direction{ContinuumFunction{}}, grid, p);
  for (double v : zero) CHECK(v < 1e-14);

  p.condensate.n0 = 0.0;
  const auto decay = cluster_diagnostic(f, f, grid, p);
  CHECK(decay.back() < 1e-3);

  p.condensate.n0 = 1.0 / condensate_prefactor;
  const auto held = cluster_diagnostic(f, f, grid, p);
  for (double v : held) CHECK(v > 1e-2);
}

TEST_CASE("cutoff removal sweep") {
  ThermalParams p;
  p.beta = 1.0;
  p.dispersion = Dispersion(1.0, 0.0);
  p.source = SourceCutoff{0.5, 2.0, Complex(1.0, 0.0)};
  p.continuum = true;
  std::vector<double> kappas, lambdas;
  for (int j = 0; j < 25; ++j) {
    kappas.push_back(0.5 * std::pow(2.0, -j));
    lambdas.push_back(2.0 * std::pow(2.0, j));
  }
  const ContinuumFunction f(RadialProfile::gaussian(Complex(1.0, 0.0), 1.0));
  const SweepResult sweep = cutoff_removal_sweep(f, kappas, lambdas, p, 1e-8);
  CHECK(sweep.cauchy);
  CHECK(sweep.monotone);
  CHECK(sweep.increments.back() < 1e-8);
  CHECK(sweep.limit_error < 1e-8);

  // inadmissible direction: non-Cauchy report, not an exception
  ThermalParams p3 = p;
  p3.dispersion = Dispersion(3.0, 0.0);
  const ContinuumFunction bad(RadialProfile::poly_gaussian(1.0, Complex(1.0, 0.0), 1.0));
  const SweepResult rejected = cutoff_removal_sweep(bad, kappas, lambdas, p3, 1e-8);
  CHECK_FALSE(rejected.cauchy);
  CHECK_FALSE(rejected.admissible);

  // amplitude zero: constant sequence
  ThermalParams pz = p;
  pz.source.amplitude = 0.0;
  const SweepResult flat = cutoff_removal_sweep(f, kappas, lambdas, pz, 1e-8);
  for (double inc : flat.increments) CHECK(inc == 0.0);
}

TEST_CASE("inadmissible directions are rejected when the cutoff is removed") {
  ThermalParams p;
  p.beta = 1.0;
  p.dispersion = Dispersion(3.0, 0.0);
  p.source = SourceCutoff{0.0, kInf, Complex(1.0, 0.0)};
  p.continuum = true;
  const Direction bad{ContinuumFunction(RadialProfile::poly_gaussian(1.0, Complex(1.0, 0.0), 1.0))};
  CHECK_THROWS_AS(mean(bad, p), InadmissibleFunctionError);
  CHECK_THROWS_AS(automorphism_apply(0.5, weyl_generator(bad), p), InadmissibleFunctionError);
}
