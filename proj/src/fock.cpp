#include "vanhove/fock.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "vanhove/errors.hpp"

namespace vanhove::fock {

namespace {

constexpr double kFlagTol = 1e-10;


Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

Matrix single_mode_ladder(int n_max) {
  Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

// adds the mode-local operator `local` (acting on mode m) into `joint`
void embed_mode_local(Matrix& joint, const Matrix& local, int mode, const TruncationSpec& spec) {
  const int d = spec.n_max + 1;
  const std::size_t dim = std::size_t(joint.rows());
  std::size_t stride = 1;
  for (int j = int(spec.modes.size()) - 1; j > mode; --j) stride *= d;
  const std::size_t outer = dim / (stride * d);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < stride; ++i) {
      const std::size_t base = o * stride * d + i;
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          const Complex v = local(r, c);
          if (v != Complex(0.0, 0.0)) joint(base + r * stride, base + c * stride) += v;
        }
    }
  }
}

Matrix single_mode_segal(Complex amplitude, int n_max) {
  const Matrix a = single_mode_ladder(n_max);
  const Matrix ad = a.adjoint();
  return (amplitude * ad + std::conj(amplitude) * a) / std::sqrt(2.0);
}

// e^{i H} for hermitian H via eigendecomposition
Matrix hermitian_phase_exp(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases = (Complex(0.0, 1.0) * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Complex lattice_amplitude(const LatticeFunction& f, const std::array<int, 3>& n) {
  auto it = f.find(n);
  return it == f.end() ? Complex(0.0, 0.0) : it->second;
}

void check_support(const LatticeFunction& f, const TruncationSpec& spec) {
  for (const auto& [n, v] : f) {
    if (v == Complex(0.0, 0.0)) continue;
    if (spec.mode_index(n) < 0)
      throw DomainError("test function has support outside the truncated mode set");
  }
}

}  // namespace

std::size_t dimension_hard_cap() {
  if (const char* env = std::getenv("VANHOVE_DIM_CAP")) {
    const long v = std::atol(env);
    if (v > 0) return std::size_t(v);
  }
  return 20000;
}

std::size_t TruncationSpec::dimension() const {
  std::size_t dim = 1;
  for (std::size_t j = 0; j < modes.size(); ++j) {
    dim *= std::size_t(n_max + 1);
    if (dim > dim_cap)
      throw DimensionCapError("truncated Fock dimension exceeds the hard cap of " +
                              std::to_string(dim_cap));
  }
  return dim;
}

TruncationSpec TruncationSpec::halved() const {
  TruncationSpec h = *this;
  h.n_max = std::max(1, n_max / 2);
  return h;
}

int TruncationSpec::mode_index(const std::array<int, 3>& n) const {
  for (std::size_t j = 0; j < modes.size(); ++j)
    if (modes[j].n == n) return int(j);
  return -1;
}

TruncationSpec make_truncation(const LatticeSpec& lattice, const Dispersion& disp, int n_max) {
  TruncationSpec spec;
  spec.n_max = n_max;
  for (const LatticeMode& m : lattice_modes(lattice))
    spec.modes.push_back({m.n, m.knorm, disp.omega(m.knorm)});
  spec.dimension();
  return spec;
}

TruncationSpec make_truncation(std::vector<double> omegas, int n_max) {
  TruncationSpec spec;
  spec.n_max = n_max;
  int label = 1;
  for (double om : omegas) {
    spec.modes.push_back({{label, 0, 0}, om, om});  // knorm = omega (s = 1 labels)
    ++label;
  }
  spec.dimension();
  return spec;
}

std::vector<int> total_occupations(const TruncationSpec& spec) {
  const std::size_t dim = spec.dimension();
  const int d = spec.n_max + 1;
  std::vector<int> occ(dim, 0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rest = idx;
    for (std::size_t j = 0; j < spec.modes.size(); ++j) {
      occ[idx] += int(rest % d);
      rest /= d;
    }
  }
  return occ;
}

FockOperator FockOperator::plain(Matrix m) { return FockOperator{std::move(m), false, false}; }

FockOperator FockOperator::hermitian_op(Matrix m) {
  const double defect = (m - m.adjoint()).norm();
  if (defect > kFlagTol)
    throw DomainError("operator fails the hermiticity certificate: defect " +
                      std::to_string(defect));
  return FockOperator{std::move(m), true, false};
}

FockOperator FockOperator::unitary_op(Matrix m) {
  const double defect =
      (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm();
  if (defect > kFlagTol)
    throw DomainError("operator fails the unitarity certificate: defect " +
                      std::to_string(defect));
  return FockOperator{std::move(m), false, true};
}

FockOperator identity(const TruncationSpec& spec) {
  const auto dim = Eigen::Index(spec.dimension());
  return FockOperator{Matrix::Identity(dim, dim), true, true};
}

std::pair<FockOperator, FockOperator> build_ladder(const TruncationSpec& spec, int mode_index) {
  if (mode_index < 0 || std::size_t(mode_index) >= spec.modes.size())
    throw DomainError("mode index out of range");
  const auto dim = Eigen::Index(spec.dimension());
  Matrix a = Matrix::Zero(dim, dim);
  embed_mode_local(a, single_mode_ladder(spec.n_max), mode_index, spec);
  Matrix ad = a.adjoint();
  return {FockOperator::plain(std::move(a)), FockOperator::plain(std::move(ad))};
}

FockOperator segal_field(const LatticeFunction& f, const TruncationSpec& spec) {
  check_support(f, spec);
  const auto dim = Eigen::Index(spec.dimension());
  Matrix phi = Matrix::Zero(dim, dim);
  for (std::size_t j = 0; j < spec.modes.size(); ++j) {
    const Complex fj = lattice_amplitude(f, spec.modes[j].n);
    if (fj == Complex(0.0, 0.0)) continue;
    embed_mode_local(phi, single_mode_segal(fj, spec.n_max), int(j), spec);
  }
  return FockOperator::hermitian_op(std::move(phi));
}

FockOperator weyl_operator(const LatticeFunction& f, const TruncationSpec& spec) {
  check_support(f, spec);
  Matrix w = Matrix::Identity(1, 1);
  for (std::size_t j = 0; j < spec.modes.size(); ++j) {
    const Complex fj = lattice_amplitude(f, spec.modes[j].n);
    if (fj == Complex(0.0, 0.0)) {
      w = kron(w, Matrix::Identity(spec.n_max + 1, spec.n_max + 1));
    } else {
      w = kron(w, hermitian_phase_exp(single_mode_segal(fj, spec.n_max)));
    }
  }
  return FockOperator::unitary_op(std::move(w));
}

std::pair<FockOperator, FockOperator> hamiltonians(const TruncationSpec& spec,
                                                   const Dispersion& disp,
                                                   const SourceCutoff& source) {
  const auto dim = Eigen::Index(spec.dimension());
  Matrix hfree = Matrix::Zero(dim, dim);
  Matrix hint = Matrix::Zero(dim, dim);
  const Matrix a = single_mode_ladder(spec.n_max);
  const Matrix number = (a.adjoint() * a);
  for (std::size_t j = 0; j < spec.modes.size(); ++j) {
    const double om = spec.modes[j].omega;
    if (!(om - disp.mu > 0.0))
      throw DomainError("hamiltonians require omega(k) - mu > 0 on every truncated mode");
    embed_mode_local(hfree, (om - disp.mu) * number, int(j), spec);
    const Complex rho = source.rho_hat(spec.modes[j].knorm);
    if (rho != Complex(0.0, 0.0)) {
      if (om == 0.0) throw ZeroModeError("source shell contains the zero mode");
      embed_mode_local(hint, single_mode_segal(rho / std::sqrt(om), spec.n_max), int(j), spec);
    }
  }
  Matrix hvh = hfree + hint;
  return {FockOperator::hermitian_op(std::move(hfree)), FockOperator::hermitian_op(std::move(hvh))};
}

FockOperator resolvent_in_rep(Complex z, const LatticeFunction& f, const TruncationSpec& spec) {
  if (std::abs(z.real()) < 1e-8)
    throw NearSingularSolve("resolvent first argument too close to the imaginary axis");
  const FockOperator phi = segal_field(f, spec);
  const auto dim = Eigen::Index(spec.dimension());
  Matrix lhs = Complex(0.0, 1.0) * z * Matrix::Identity(dim, dim) - phi.mat;
  Matrix r = lhs.partialPivLu().solve(Matrix::Identity(dim, dim));
  return FockOperator::plain(std::move(r));
}

double ground_state_energy(const FockOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

std::vector<double> sorted_spectrum(const FockOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

ThermalKernel thermal_kernel(const TruncationSpec& spec, const Dispersion& disp,
                             const SourceCutoff& source, double beta) {
  ThermalKernel out;
  Matrix heat = Matrix::Identity(1, 1);
  double emin = 0.0, emax = 0.0;
  for (const ModeSpec& mode : spec.modes) {
    const double om = mode.omega;
    if (!(om - disp.mu > 0.0))
      throw DomainError("thermal kernel requires omega(k) - mu > 0 on every truncated mode");
    Matrix h = (om - disp.mu) * (single_mode_ladder(spec.n_max).adjoint() *
                                 single_mode_ladder(spec.n_max));
    const Complex rho = source.rho_hat(mode.knorm);
    if (rho != Complex(0.0, 0.0)) {
      if (om == 0.0) throw ZeroModeError("source shell contains the zero mode");
      h += single_mode_segal(rho / std::sqrt(om), spec.n_max);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    emin += es.eigenvalues()(0);
    emax += es.eigenvalues()(spec.n_max);
    Vector weights = (-beta * es.eigenvalues().array()).exp().matrix().cast<Complex>();
    Matrix factor = es.eigenvectors() * weights.asDiagonal() * es.eigenvectors().adjoint();
    heat = kron(heat, factor);
  }
  out.partition = heat.trace().real();
  out.tail_weight = std::exp(-beta * (emax - emin));
  out.heat = std::move(heat);
  return out;
}

Complex gc_value(const ThermalKernel& kernel, const Matrix& observable) {
  // Tr(heat * A) without forming the product
  return (kernel.heat.transpose().cwiseProduct(observable)).sum() / kernel.partition;
}

OracleReport gc_expectation(const ObservableBuilder& observable, const TruncationSpec& spec,
                            const Dispersion& disp, const SourceCutoff& source, double beta) {
  OracleReport out;
  const ThermalKernel full = thermal_kernel(spec, disp, source, beta);
  out.value = gc_value(full, observable(spec));
  out.tail_weight = full.tail_weight;
  const TruncationSpec half = spec.halved();
  const ThermalKernel coarse = thermal_kernel(half, disp, source, beta);
  const Complex coarse_value = gc_value(coarse, observable(half));
  out.truncation_estimate = std::abs(out.value - coarse_value);
  return out;
}

double low_block_norm(const Matrix& m, const TruncationSpec& spec, int cut) {
  const std::vector<int> occ = total_occupations(spec);
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < occ.size(); ++i)
    if (occ[i] <= cut) keep.push_back(Eigen::Index(i));
  Matrix block(keep.size(), keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t c = 0; c < keep.size(); ++c) block(r, c) = m(keep[r], keep[c]);
  Eigen::JacobiSVD<Matrix> svd(block);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

Matrix low_block_panel(const TruncationSpec& spec, int cut) {
  const std::vector<int> occ = total_occupations(spec);
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < occ.size(); ++i)
    if (occ[i] <= cut) keep.push_back(Eigen::Index(i));
  Matrix panel = Matrix::Zero(Eigen::Index(occ.size()), Eigen::Index(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) panel(keep[c], Eigen::Index(c)) = 1.0;
  return panel;
}

}  // namespace vanhove::fock
