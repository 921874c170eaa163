#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "vanhove/forms.hpp"

namespace vanhove::fock {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

std::size_t dimension_hard_cap();  // VANHOVE_DIM_CAP env override, default 20000

struct ModeSpec {
  std::array<int, 3> n;  // lattice label
  double knorm;
  double omega;
};

// Truncated multi-mode occupation basis: joint index runs over occupation
// tuples (n_1, ..., n_M) with 0 <= n_j <= n_max; mode 0 is the slowest digit.
struct TruncationSpec {
  std::vector<ModeSpec> modes;
  int n_max = 16;
  std::size_t dim_cap = dimension_hard_cap();

  std::size_t dimension() const;  // throws DimensionCapError
  TruncationSpec halved() const;
  int mode_index(const std::array<int, 3>& n) const;  // -1 when absent
};

TruncationSpec make_truncation(const LatticeSpec& lattice, const Dispersion& disp, int n_max);
// ad-hoc mode set for single/few-mode experiments
TruncationSpec make_truncation(std::vector<double> omegas, int n_max);

// per-basis-state total occupation, in joint-index order
std::vector<int> total_occupations(const TruncationSpec& spec);

// Dense operator with verified structural flags.
struct FockOperator {
  Matrix mat;
  bool hermitian = false;
  bool unitary = false;

  static FockOperator plain(Matrix m);
  static FockOperator hermitian_op(Matrix m);  // verifies ||A - A*||_F <= 1e-10
  static FockOperator unitary_op(Matrix m);    // verifies ||A*A - 1||_F <= 1e-10
};

FockOperator identity(const TruncationSpec& spec);

// truncated ladder pair (a, a†) acting on one mode of the joint basis
std::pair<FockOperator, FockOperator> build_ladder(const TruncationSpec& spec, int mode_index);

// phi(f) = (a†(f) + a(f))/sqrt(2), a†(f) = sum f_k a†_k
FockOperator segal_field(const LatticeFunction& f, const TruncationSpec& spec);
// W(f) = e^{i phi(f)}, assembled as the tensor product of per-mode
// exponentials (each from a hermitian eigendecomposition)
FockOperator weyl_operator(const LatticeFunction& f, const TruncationSpec& spec);

// (H_free(mu), H_vH): H_free = sum (omega_k - mu) a†_k a_k and the source
// term phi(g) with g_k = rho_hat(k)/sqrt(omega_k)
std::pair<FockOperator, FockOperator> hamiltonians(const TruncationSpec& spec,
                                                   const Dispersion& disp,
                                                   const SourceCutoff& source);

// (i z - phi(f))^{-1} by dense linear solve; requires |Re z| >= 1e-8
FockOperator resolvent_in_rep(Complex z, const LatticeFunction& f, const TruncationSpec& spec);

// lowest eigenvalue of a hermitian operator
double ground_state_energy(const FockOperator& h);
std::vector<double> sorted_spectrum(const FockOperator& h);

// e^{-beta H_vH} assembled per mode (the Hamiltonian is a sum of commuting
// single-mode terms, so the heat operator is the tensor product of the
// single-mode heat factors).
struct ThermalKernel {
  Matrix heat;
  double partition = 0.0;
  double tail_weight = 0.0;  // e^{-beta (E_max - E_min)} at this truncation
};

ThermalKernel thermal_kernel(const TruncationSpec& spec, const Dispersion& disp,
                             const SourceCutoff& source, double beta);

Complex gc_value(const ThermalKernel& kernel, const Matrix& observable);

struct OracleReport {
  Complex value{0.0, 0.0};
  double truncation_estimate = 0.0;
  double tail_weight = 0.0;
  bool converged(double tol) const { return truncation_estimate <= tol; }
};

using ObservableBuilder = std::function<Matrix(const TruncationSpec&)>;

// Tr(e^{-beta H} A)/Tr(e^{-beta H}) with a truncation estimate from an
// n_max/2 rerun. Nothing is reported without its error bar.
OracleReport gc_expectation(const ObservableBuilder& observable, const TruncationSpec& spec,
                            const Dispersion& disp, const SourceCutoff& source, double beta);

// spectral norm of the block with total occupation <= cut
double low_block_norm(const Matrix& m, const TruncationSpec& spec, int cut);

// columns of the identity spanning occupations <= cut (dim x q panel)
Matrix low_block_panel(const TruncationSpec& spec, int cut);

}  // namespace vanhove::fock
