#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vanhove/errors.hpp"
#include "vanhove/fock.hpp"
#include "vanhove/rng.hpp"

using namespace vanhove;
using fock::Matrix;
using fock::TruncationSpec;

namespace {

LatticeFunction amplitudes(const TruncationSpec& spec, std::initializer_list<Complex> values) {
  LatticeFunction f;
  auto it = values.begin();
  for (std::size_t j = 0; j < spec.modes.size() && it != values.end(); ++j, ++it)
    f[spec.modes[j].n] = *it;
  return f;
}

}  // namespace

TEST_CASE("ladder matrices") {
  const TruncationSpec spec = fock::make_truncation({1.0}, 1);
  auto [a, ad] = fock::build_ladder(spec, 0);
  CHECK(a.mat(0, 1) == Complex(1.0, 0.0));
  CHECK(a.mat(0, 0) == Complex(0.0, 0.0));
  CHECK(a.mat(1, 0) == Complex(0.0, 0.0));
  CHECK(a.mat(1, 1) == Complex(0.0, 0.0));
  // vacuum occupation
  CHECK(std::abs((ad.mat * a.mat)(0, 0)) == 0.0);
}

TEST_CASE("canonical commutator below the cap") {
  const TruncationSpec spec = fock::make_truncation({1.0, 2.0}, 6);
  Rng rng(3);
  LatticeFunction f = amplitudes(spec, {rng.complex_normal(1.0), rng.complex_normal(1.0)});
  LatticeFunction g = amplitudes(spec, {rng.complex_normal(1.0), rng.complex_normal(1.0)});
  // a(f) = sum conj(f_k) a_k via phi combinations is awkward; check per mode:
  // [a_i, a_j†] = delta_ij on occupations < n_max
  const auto occ = fock::total_occupations(spec);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto [ai, adi] = fock::build_ladder(spec, i);
      auto [aj, adj] = fock::build_ladder(spec, j);
      Matrix comm = ai.mat * adj.mat - adj.mat * ai.mat;
      const Complex expected = i == j ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      for (Eigen::Index r = 0; r < comm.rows(); ++r) {
        if (occ[std::size_t(r)] >= spec.n_max) continue;
        // sqrt(n)*sqrt(n) rounds within one ulp of n
        CHECK(std::abs(comm(r, r) - expected) < 1e-14);
      }
    }
  (void)f;
  (void)g;
}

TEST_CASE("segal field and Weyl operator") {
  const TruncationSpec spec = fock::make_truncation({1.0}, 24);
  const LatticeFunction zero;
  CHECK(fock::segal_field(zero, spec).mat.norm() == 0.0);

  const LatticeFunction one = amplitudes(spec, {Complex(1.0, 0.0)});
  auto [a, ad] = fock::build_ladder(spec, 0);
  CHECK((fock::segal_field(one, spec).mat - (a.mat + ad.mat) / std::sqrt(2.0)).norm() < 1e-14);

  // W(0) = 1
  CHECK((fock::weyl_operator(zero, spec).mat - Matrix::Identity(25, 25)).norm() < 1e-14);

  // W(f) W(-f) = 1 on the low-occupation block
  const LatticeFunction f = amplitudes(spec, {Complex(0.6, -0.4)});
  const Matrix wf = fock::weyl_operator(f, spec).mat;
  const Matrix wm = fock::weyl_operator(scale(-1.0, f), spec).mat;
  Matrix defect = wf * wm - Matrix::Identity(25, 25);
  CHECK(fock::low_block_norm(defect, spec, 12) < 1e-10);

  // vacuum overlap <0|W(f)|0> = e^{-|f|^2/4}; f = 1 -> 0.77880078307140487
  CHECK(std::abs(fock::weyl_operator(one, spec).mat(0, 0) - Complex(0.7788007830714049, 0.0)) <
        1e-12);

  // mode mismatch
  LatticeFunction outside;
  outside[{9, 9, 9}] = 1.0;
  CHECK_THROWS_AS(fock::segal_field(outside, spec), DomainError);
}

TEST_CASE("field commutator matches the symplectic form") {
  const TruncationSpec spec = fock::make_truncation({1.0, 1.7}, 10);
  Rng rng(11);
  const LatticeFunction f = amplitudes(spec, {rng.complex_normal(0.8), rng.complex_normal(0.8)});
  const LatticeFunction g = amplitudes(spec, {rng.complex_normal(0.8), rng.complex_normal(0.8)});
  const Matrix pf = fock::segal_field(f, spec).mat;
  const Matrix pg = fock::segal_field(g, spec).mat;
  const Complex expected(0.0, inner(f, g).imag());
  Matrix defect = pf * pg - pg * pf -
                  expected * Matrix::Identity(pf.rows(), pf.cols());
  CHECK(fock::low_block_norm(defect, spec, 5) < 1e-12);
}

TEST_CASE("weyl conjugation shifts the field") {
  // W(f) phi(g) W(f)^{-1} = phi(g) - Im<f,g>
  const TruncationSpec spec = fock::make_truncation({1.0, 1.5}, 18);
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const LatticeFunction f =
        amplitudes(spec, {rng.complex_normal(0.4), rng.complex_normal(0.4)});
    const LatticeFunction g =
        amplitudes(spec, {rng.complex_normal(0.4), rng.complex_normal(0.4)});
    const Matrix wf = fock::weyl_operator(f, spec).mat;
    const Matrix pg = fock::segal_field(g, spec).mat;
    const double shift = inner(f, g).imag();
    Matrix defect = wf * pg * wf.adjoint() - pg +
                    Complex(shift, 0.0) * Matrix::Identity(pg.rows(), pg.cols());
    CHECK(fock::low_block_norm(defect, spec, 6) < 1e-8);
  }
}

TEST_CASE("hamiltonians and ground-state energy") {
  const TruncationSpec spec = fock::make_truncation({1.0}, 32);
  const Dispersion disp(1.0, 0.0);

  // rho = 0: H_vH = H_free, vacuum ground state at energy 0
  const SourceCutoff off{0.0, 10.0, Complex(0.0, 0.0)};
  auto [hfree0, hvh0] = fock::hamiltonians(spec, disp, off);
  CHECK((hvh0.mat - hfree0.mat).norm() == 0.0);
  CHECK(fock::ground_state_energy(hfree0) == doctest::Approx(0.0).epsilon(1e-14));

  // single mode omega = 1, rho = 1: ground-state energy -1/2
  const SourceCutoff on{0.5, 2.0, Complex(1.0, 0.0)};
  auto [hfree, hvh] = fock::hamiltonians(spec, disp, on);
  CHECK(fock::ground_state_energy(hvh) == doctest::Approx(-0.5).epsilon(1e-12));

  // dressing: spectra of H_vH and H_free + E0 agree after sorting (mu = 0)
  const auto sv = fock::sorted_spectrum(hvh);
  const auto sf = fock::sorted_spectrum(hfree);
  for (int j = 0; j < 12; ++j)
    CHECK(std::abs(sv[std::size_t(j)] - (sf[std::size_t(j)] - 0.5)) < 1e-8);
}

TEST_CASE("two-mode dressing and partition identity") {
  const Dispersion disp(1.0, 0.0);
  const SourceCutoff on{0.5, 3.0, Complex(1.0, 0.0)};
  const TruncationSpec spec = fock::make_truncation({1.0, std::sqrt(2.0)}, 16);
  auto [hfree, hvh] = fock::hamiltonians(spec, disp, on);
  const double e0 = -(1.0 / 2.0 + 1.0 / (2.0 * 2.0));
  const auto sv = fock::sorted_spectrum(hvh);
  const auto sf = fock::sorted_spectrum(hfree);
  for (int j = 0; j < 10; ++j)
    CHECK(std::abs(sv[std::size_t(j)] - (sf[std::size_t(j)] + e0)) < 1e-8);

  // trace identity: Tr e^{-beta H_vH} = e^{-beta E0} Tr e^{-beta H_free};
  // the displaced modes converge more slowly than the free ones
  const double beta = 1.0;
  const TruncationSpec wide = fock::make_truncation({1.0, std::sqrt(2.0)}, 28);
  const auto kern_vh = fock::thermal_kernel(wide, disp, on, beta);
  const auto kern_free = fock::thermal_kernel(wide, disp, SourceCutoff{0.5, 3.0, 0.0}, beta);
  CHECK(kern_vh.partition ==
        doctest::Approx(std::exp(-beta * e0) * kern_free.partition).epsilon(1e-6));
}

TEST_CASE("grand canonical expectations") {
  const TruncationSpec spec = fock::make_truncation({1.0}, 48);
  const Dispersion disp(1.0, 0.0);
  const SourceCutoff off{0.0, 10.0, Complex(0.0, 0.0)};

  // identity -> 1
  auto report_id = fock::gc_expectation(
      [](const TruncationSpec& t) { return fock::identity(t).mat; }, spec, disp, off, 1.0);
  CHECK(std::abs(report_id.value - Complex(1.0, 0.0)) < 1e-14);

  // free occupation at beta = 1, omega = 1: 1/(e-1) = 0.58197670686932642
  auto report_n = fock::gc_expectation(
      [](const TruncationSpec& t) {
        auto [a, ad] = fock::build_ladder(t, 0);
        return (ad.mat * a.mat).eval();
      },
      spec, disp, off, 1.0);
  CHECK(std::abs(report_n.value - Complex(0.5819767068693264, 0.0)) < 1e-10);
  CHECK(report_n.truncation_estimate < 1e-8);

  // thermal Weyl expectation: e^{-coth(1/2)/4} = 0.58217257567009774
  auto report_w = fock::gc_expectation(
      [](const TruncationSpec& t) {
        LatticeFunction f;
        f[t.modes[0].n] = 1.0;
        return fock::weyl_operator(f, t).mat;
      },
      spec, disp, off, 1.0);
  CHECK(std::abs(report_w.value - Complex(0.5821725756700977, 0.0)) < 1e-10);

  // q-form oracle: <2 a†a + 1> = coth(beta/2)
  auto report_q = fock::gc_expectation(
      [](const TruncationSpec& t) {
        auto [a, ad] = fock::build_ladder(t, 0);
        return (2.0 * ad.mat * a.mat + fock::identity(t).mat).eval();
      },
      spec, disp, off, 1.0);
  CHECK(std::abs(report_q.value - Complex(2.1639534137386528, 0.0)) < 1e-10);

  // hermitian observables have real expectations
  CHECK(std::abs(report_n.value.imag()) < 1e-10);
}

TEST_CASE("self-convergence under truncation doubling") {
  const Dispersion disp(1.0, 0.0);
  const SourceCutoff on{0.5, 2.0, Complex(1.0, 0.0)};
  auto weyl_builder = [](const TruncationSpec& t) {
    LatticeFunction f;
    f[t.modes[0].n] = Complex(0.7, 0.2);
    return fock::weyl_operator(f, t).mat;
  };
  const TruncationSpec s32 = fock::make_truncation({1.0}, 32);
  const TruncationSpec s64 = fock::make_truncation({1.0}, 64);
  const auto v32 = fock::gc_expectation(weyl_builder, s32, disp, on, 1.0);
  const auto v64 = fock::gc_expectation(weyl_builder, s64, disp, on, 1.0);
  CHECK(std::abs(v64.value - v32.value) < 1e-5);  // 10x the 1e-6 request
  CHECK(v64.truncation_estimate <= v32.truncation_estimate);
}

TEST_CASE("resolvent in the representation") {
  const TruncationSpec spec = fock::make_truncation({1.0}, 32);  // odd dimension
  const LatticeFunction zero;
  // R(2, 0) = -(i/2) 1
  const Matrix r0 = fock::resolvent_in_rep(Complex(2.0, 0.0), zero, spec).mat;
  CHECK((r0 - Complex(0.0, -0.5) * Matrix::Identity(33, 33)).norm() < 1e-12);

  const LatticeFunction one = [&] {
    LatticeFunction f;
    f[spec.modes[0].n] = 1.0;
    return f;
  }();
  // norm law ||R(1, f)|| = 1 (zero is an eigenvalue of the truncated field
  // at odd dimension)
  const Matrix r1 = fock::resolvent_in_rep(Complex(1.0, 0.0), one, spec).mat;
  Eigen::JacobiSVD<Matrix> svd(r1);
  CHECK(svd.singularValues()(0) == doctest::Approx(1.0).epsilon(1e-6));

  // resolvent identity residual
  const Matrix r2 = fock::resolvent_in_rep(Complex(2.0, 0.0), one, spec).mat;
  CHECK((r1 - r2 - Complex(0.0, 1.0) * (r1 * r2)).norm() < 1e-8);

  CHECK_THROWS_AS(fock::resolvent_in_rep(Complex(1e-9, 1.0), one, spec), NearSingularSolve);
}

TEST_CASE("dimension cap") {
  TruncationSpec spec = fock::make_truncation({1.0, 1.0, 1.0}, 10);
  spec.n_max = 40;
  CHECK_THROWS_AS(spec.dimension(), DimensionCapError);
}

TEST_CASE("tensor assembly equals joint-basis exponentials") {
  // the per-mode assembly of W(f) must agree with exponentiating the joint
  // field matrix; small case where the joint eigendecomposition is cheap
  const TruncationSpec spec = fock::make_truncation({1.0, 1.3}, 8);
  const LatticeFunction f = amplitudes(spec, {Complex(0.4, 0.1), Complex(-0.2, 0.3)});
  const Matrix joint_phi = fock::segal_field(f, spec).mat;
  Eigen::SelfAdjointEigenSolver<Matrix> es(joint_phi);
  const Matrix direct =
      es.eigenvectors() *
      (Complex(0.0, 1.0) * es.eigenvalues().cast<Complex>()).array().exp().matrix().asDiagonal() *
      es.eigenvectors().adjoint();
  CHECK((fock::weyl_operator(f, spec).mat - direct).norm() < 1e-12);
}
