#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vanhove/errors.hpp"
#include "vanhove/forms.hpp"
#include "vanhove/rng.hpp"

using namespace vanhove;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kInf = std::numeric_limits<double>::infinity();

// brute-force integer enumeration, independent of the production path
int count_shell_points(double spacing, double kappa, double lambda, int reach) {
  int count = 0;
  for (int i = -reach; i <= reach; ++i)
    for (int j = -reach; j <= reach; ++j)
      for (int k = -reach; k <= reach; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        const double knorm = spacing * std::sqrt(double(i * i + j * j + k * k));
        if (knorm >= kappa && knorm <= lambda) ++count;
      }
  return count;
}

LatticeFunction single_mode(Complex value) {
  LatticeFunction f;
  f[{1, 0, 0}] = value;
  return f;
}

// unit spacing, unit-norm first shell: omega((1,0,0)) = 1 for s = 1
const LatticeSpec kUnitLattice{2.0 * kPi, 0.0, kInf, false};

}  // namespace

TEST_CASE("dispersion") {
  Dispersion d1(1.0);
  CHECK(d1.omega({1.0, 0.0, 0.0}) == doctest::Approx(1.0));
  Dispersion d2(2.0);
  CHECK(d2.omega({0.0, 3.0, 4.0}) == doctest::Approx(25.0));
  CHECK(d2.omega({0.0, 0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(Dispersion(0.5), DomainError);
}

TEST_CASE("lattice mode enumeration") {
  LatticeSpec spec{2.0 * kPi, 0.5, 1.2, false};
  auto modes = lattice_modes(spec);
  CHECK(modes.size() == 6);
  CHECK(int(modes.size()) == count_shell_points(1.0, 0.5, 1.2, 3));

  spec.lambda = 1.5;
  modes = lattice_modes(spec);
  CHECK(modes.size() == 18);
  CHECK(int(modes.size()) == count_shell_points(1.0, 0.5, 1.5, 3));

  spec.kappa = 2.0;
  spec.lambda = 1.0;
  CHECK(lattice_modes(spec).empty());

  spec.lambda = kInf;
  CHECK_THROWS_AS(lattice_modes(spec), UnboundedShellError);
}

TEST_CASE("lattice mean functional") {
  const Dispersion disp(1.0);
  const SourceCutoff shell{0.5, 1.5, Complex(1.0, 0.0)};
  // single mode omega = 1, rho = 1, f = 1 -> 1
  CHECK(mean_functional(single_mode(1.0), shell, kUnitLattice, disp).real() ==
        doctest::Approx(1.0).epsilon(1e-14));
  // support disjoint from the shell -> 0
  LatticeFunction far;
  far[{3, 0, 0}] = 1.0;
  CHECK(std::abs(mean_functional(far, shell, kUnitLattice, disp)) == 0.0);
  // zero mode in the shell is an error
  LatticeFunction with_zero;
  with_zero[{0, 0, 0}] = 1.0;
  const SourceCutoff open_shell{0.0, 1.5, Complex(1.0, 0.0)};
  CHECK_THROWS_AS(mean_functional(with_zero, open_shell, kUnitLattice, disp), ZeroModeError);
}

TEST_CASE("continuum mean functional matches the closed form") {
  // s = 1, gaussian fhat = e^{-r^2}, no cutoffs:
  // 4 pi int r^{1/2} e^{-r^2} dr = 2 pi Gamma(3/4) = 7.6995202201016631
  const ContinuumContext ctx{Dispersion(1.0), QuadratureSpec{}};
  const ContinuumFunction f(RadialProfile::gaussian(Complex(1.0, 0.0), 1.0));
  const SourceCutoff source{0.0, kInf, Complex(1.0, 0.0)};
  const Complex m = mean_functional(f, source, ctx);
  CHECK(m.real() == doctest::Approx(7.6995202201016631).epsilon(1e-9));
  CHECK(std::abs(m.imag()) < 1e-12);

  // self-convergence of the quadrature: tighter tolerances agree
  ContinuumContext tight = ctx;
  tight.quad.abs_tol = 1e-15;
  tight.quad.rel_tol = 1e-13;
  CHECK(std::abs(mean_functional(f, source, tight) - m) < 1e-9);
}

TEST_CASE("cocycle functional") {
  const Dispersion disp(1.0);
  const SourceCutoff shell{0.5, 1.5, Complex(1.0, 0.0)};
  // t = 0 -> 0 for any f
  CHECK(cocycle_functional(0.0, single_mode(Complex(0.3, 0.7)), shell, kUnitLattice, disp) == 0.0);
  // f = 0 -> 0
  CHECK(cocycle_functional(1.3, LatticeFunction{}, shell, kUnitLattice, disp) == 0.0);
  // single mode omega = 1, t = pi: Re(e^{i pi} - 1) = -2
  CHECK(cocycle_functional(kPi, single_mode(1.0), shell, kUnitLattice, disp) ==
        doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("cocycle law on random lattice draws") {
  const Dispersion disp(1.0);
  const SourceCutoff shell{0.5, 2.5, Complex(1.0, 0.0)};
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    LatticeFunction f;
    f[{1, 0, 0}] = rng.complex_normal(1.0);
    f[{1, 1, 0}] = rng.complex_normal(1.0);
    f[{1, 1, 1}] = rng.complex_normal(1.0);
    const double t = rng.uniform(-4.0, 4.0);
    const double u = rng.uniform(-4.0, 4.0);
    const double lhs = cocycle_functional(t + u, f, shell, kUnitLattice, disp);
    const double mt = cocycle_functional(t, f, shell, kUnitLattice, disp);
    const double mu = cocycle_functional(u, time_evolve(f, t, kUnitLattice, disp), shell,
                                         kUnitLattice, disp);
    CHECK(std::abs(lhs - mt - mu) <= 1e-12 * (1.0 + std::abs(mt)));
  }
}

TEST_CASE("thermal form on the lattice") {
  const Dispersion disp(1.0);
  // single mode omega = 1, beta = 1: coth(1/2) = 2.1639534137386528
  CHECK(q_nonzero(single_mode(1.0), 1.0, kUnitLattice, disp) ==
        doctest::Approx(2.1639534137386528).epsilon(1e-14));
  CHECK(q_nonzero(LatticeFunction{}, 1.0, kUnitLattice, disp) == 0.0);
  // coth -> 1: monotone decrease in beta toward ||f||^2
  const LatticeFunction f = single_mode(Complex(0.4, -1.1));
  double prev = kInf;
  for (double beta : {0.5, 1.0, 2.0, 4.0, 64.0}) {
    const double q = q_nonzero(f, beta, kUnitLattice, disp);
    CHECK(q >= norm_squared(f));
    CHECK(q < prev);
    prev = q;
  }
  CHECK(q_nonzero(f, 512.0, kUnitLattice, disp) ==
        doctest::Approx(norm_squared(f)).epsilon(1e-10));
}

TEST_CASE("q form properties: polarization, positivity, isometry") {
  const ContinuumContext ctx{Dispersion(1.0), QuadratureSpec{}};
  const double beta = 1.3;
  Rng rng(7);
  const ContinuumFunction f(RadialProfile::gaussian(Complex(0.8, 0.3), 0.9));
  const ContinuumFunction g(RadialProfile::poly_gaussian(2.0, Complex(-0.5, 1.1), 1.2));
  const double qf = q_nonzero(f, beta, ctx);
  const double qg = q_nonzero(g, beta, ctx);
  const double qsum = q_nonzero(f + g, beta, ctx);
  const double qdiff = q_nonzero(f + g.scaled(-1.0), beta, ctx);
  CHECK(qsum + qdiff == doctest::Approx(2.0 * qf + 2.0 * qg).epsilon(1e-10));
  CHECK(qf >= norm_squared(f, ctx));
  CHECK(qg >= norm_squared(g, ctx));
  // unitarity of the free evolution
  for (double t : {0.7, -2.3}) {
    CHECK(q_nonzero(f.time_evolved(t), beta, ctx) == doctest::Approx(qf).epsilon(1e-12));
    CHECK(norm_squared(f.time_evolved(t), ctx) ==
          doctest::Approx(norm_squared(f, ctx)).epsilon(1e-12));
  }
  (void)rng;
}

TEST_CASE("q form domain error at s = 3 with nonvanishing fhat(0)") {
  const ContinuumContext ctx{Dispersion(3.0), QuadratureSpec{}};
  const ContinuumFunction f(RadialProfile::gaussian(Complex(1.0, 0.0), 1.0));
  CHECK_THROWS_AS(q_nonzero(f, 1.0, ctx), QuadratureDivergence);
}

TEST_CASE("condensate form") {
  const CondensateParams cond{1.0, 1.0 / condensate_prefactor};
  const ContinuumFunction unit(RadialProfile::gaussian(Complex(1.0, 0.0), 1.0));
  CHECK(q_zero(unit, cond) == doctest::Approx(1.0).epsilon(1e-14));
  const ContinuumFunction vanishing(RadialProfile::poly_gaussian(2.0, Complex(1.0, 0.0), 1.0));
  CHECK(q_zero(vanishing, cond) == 0.0);
  CHECK(q_zero(unit, CondensateParams{1.0, 0.0}) == 0.0);
}

TEST_CASE("infrared classifier") {
  const RadialProfile smooth = RadialProfile::gaussian(Complex(1.0, 0.0), 1.0);
  const RadialProfile cubic = RadialProfile::poly_gaussian(3.0, Complex(1.0, 0.0), 1.0);

  CHECK(ir_classify(smooth, Dispersion(1.0)).admissible);
  CHECK_FALSE(ir_classify(smooth, Dispersion(3.0)).admissible);
  CHECK(ir_classify(cubic, Dispersion(3.0)).admissible);
  // marginal case s = 2 with fhat(0) != 0 is rejected
  CHECK_FALSE(ir_classify(smooth, Dispersion(2.0)).admissible);
  CHECK(ir_classify(cubic, Dispersion(2.0)).admissible);
  // theorem-literal mode: rejection for every s > 2 as well
  CHECK_FALSE(ir_classify(smooth, Dispersion(2.5), IrExponentMode::theorem_literal).admissible);
  CHECK(ir_classify(smooth, Dispersion(1.0), IrExponentMode::theorem_literal).admissible);
  // x0 membership tracks fhat(0)
  CHECK(ir_classify(smooth, Dispersion(1.0)).in_x0);
  CHECK_FALSE(ir_classify(cubic, Dispersion(1.0)).in_x0);
}

TEST_CASE("classifier scale invariance") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const double s = rng.uniform(1.0, 3.0);
    const double p = rng.uniform(0.2, 4.0);
    const Complex c = rng.complex_normal(2.0);
    if (std::abs(c) < 1e-3) continue;
    const ContinuumFunction f(RadialProfile::poly_gaussian(p, Complex(1.0, 0.0), 1.0));
    const IrClassification base = ir_classify(f, Dispersion(s));
    const IrClassification scaled = ir_classify(f.scaled(c), Dispersion(s));
    CHECK(base.admissible == scaled.admissible);
    CHECK(base.in_x0 == scaled.in_x0);
  }
}

TEST_CASE("infrared shell integral") {
  const Dispersion s1(1.0);
  // s = 1, kappa = 1, Lambda = e: 4 pi ln(e) = 4 pi
  const ShellIntegral log_case = ir_shell_integral(1.0, std::exp(1.0), s1);
  CHECK(log_case.status == ShellStatus::finite);
  CHECK(log_case.value == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  // numerical cross-check of the antiderivative
  {
    QuadratureSpec quad;
    const Complex numeric = integrate(
        [](double r) { return Complex(4.0 * kPi / r, 0.0); }, 1.0, std::exp(1.0), quad);
    CHECK(log_case.value == doctest::Approx(numeric.real()).epsilon(1e-12));
  }
  CHECK(ir_shell_integral(0.0, 2.0, s1).status == ShellStatus::infrared_divergent);
  CHECK(ir_shell_integral(1.0, kInf, s1).status == ShellStatus::ultraviolet_divergent);
  CHECK(ir_shell_integral(1.5, 1.5, s1).value == 0.0);
  // power case, checked against quadrature
  const Dispersion s2(2.0);
  const ShellIntegral power = ir_shell_integral(0.7, 3.0, s2);
  QuadratureSpec quad;
  const Complex numeric =
      integrate([](double r) { return Complex(4.0 * kPi * std::pow(r, -4.0), 0.0); }, 0.7, 3.0,
                quad);
  CHECK(power.value == doctest::Approx(numeric.real()).epsilon(1e-11));
  CHECK(ir_shell_integral(0.0, 1.0, s2).status == ShellStatus::infrared_divergent);
  CHECK(ir_shell_integral(1.0, kInf, s2).status == ShellStatus::finite);
}

TEST_CASE("sampled radial table") {
  std::vector<std::pair<double, Complex>> rows;
  for (int j = 0; j <= 400; ++j) {
    const double r = 0.02 * j;
    rows.push_back({r, std::exp(-r * r)});
  }
  const RadialProfile table = RadialProfile::from_table(rows, 2.0);
  const ContinuumContext ctx{Dispersion(1.0), QuadratureSpec{}};
  const ContinuumFunction f(table);
  const ContinuumFunction exact(RadialProfile::gaussian(Complex(1.0, 0.0), 1.0));
  // linear interpolation of a smooth profile: few-digit agreement is enough
  CHECK(norm_squared(f, ctx) == doctest::Approx(norm_squared(exact, ctx)).epsilon(1e-4));
}
