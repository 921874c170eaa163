#include "vanhove/resolvent.hpp"

#include <cmath>

#include "vanhove/errors.hpp"
#include "vanhove/faddeeva.hpp"
#include "vanhove/rng.hpp"

namespace vanhove {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kExpCutoff = 46.0;  // e^{-46} ~ 1e-20

double q_cross_real(const Direction& f, const Direction& g, const ThermalParams& p) {
  return q_total_form(f, g, p).real();
}

// adaptive 2D Simpson on a rectangle
Complex simpson2d_panel(const std::function<Complex(double, double)>& F, double x0, double x1,
                        double y0, double y1, const std::array<Complex, 9>& vals) {
  const double wx[3] = {1.0, 4.0, 1.0};
  Complex acc = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += wx[i] * wx[j] * vals[i * 3 + j];
  (void)F;
  return acc * (x1 - x0) * (y1 - y0) / 36.0;
}

std::array<Complex, 9> sample9(const std::function<Complex(double, double)>& F, double x0,
                               double x1, double y0, double y1) {
  std::array<Complex, 9> v;
  const double xs[3] = {x0, 0.5 * (x0 + x1), x1};
  const double ys[3] = {y0, 0.5 * (y0 + y1), y1};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[i * 3 + j] = F(xs[i], ys[j]);
  return v;
}

Complex integrate2d_rec(const std::function<Complex(double, double)>& F, double x0, double x1,
                        double y0, double y1, double tol, int depth) {
  const auto vals = sample9(F, x0, x1, y0, y1);
  const Complex whole = simpson2d_panel(F, x0, x1, y0, y1, vals);
  const double xm = 0.5 * (x0 + x1);
  const double ym = 0.5 * (y0 + y1);
  Complex children = 0.0;
  children += simpson2d_panel(F, x0, xm, y0, ym, sample9(F, x0, xm, y0, ym));
  children += simpson2d_panel(F, xm, x1, y0, ym, sample9(F, xm, x1, y0, ym));
  children += simpson2d_panel(F, x0, xm, ym, y1, sample9(F, x0, xm, ym, y1));
  children += simpson2d_panel(F, xm, x1, ym, y1, sample9(F, xm, x1, ym, y1));
  if (depth >= 2 && (std::abs(whole - children) < tol || depth >= 22)) return children;
  return integrate2d_rec(F, x0, xm, y0, ym, 0.25 * tol, depth + 1) +
         integrate2d_rec(F, xm, x1, y0, ym, 0.25 * tol, depth + 1) +
         integrate2d_rec(F, x0, xm, ym, y1, 0.25 * tol, depth + 1) +
         integrate2d_rec(F, xm, x1, ym, y1, 0.25 * tol, depth + 1);
}

Complex integrate2d(const std::function<Complex(double, double)>& F, double x1, double y1,
                    double tol) {
  return integrate2d_rec(F, 0.0, x1, 0.0, y1, tol, 0);
}

double upper_cut(double rate, double quartic) {
  // smallest T with rate*T + quartic*T^2 >= kExpCutoff
  if (quartic < 1e-300) return kExpCutoff / rate;
  return (-rate + std::sqrt(rate * rate + 4.0 * quartic * kExpCutoff)) / (2.0 * quartic);
}

}  // namespace

ResolventGenerator::ResolventGenerator(Complex z_, Direction f) : z(z_), direction(std::move(f)) {
  if (z.real() == 0.0)
    throw DomainError("resolvent generator requires a first argument off the imaginary axis");
}

ResolventExpression adjoint(const ResolventExpression& expr) {
  ResolventExpression out;
  out.prefactor = std::conj(expr.prefactor);
  for (auto it = expr.factors.rbegin(); it != expr.factors.rend(); ++it)
    out.factors.emplace_back(-std::conj(it->z), it->direction);
  return out;
}

ResolventGenerator automorphism_apply(double t, const ResolventGenerator& r,
                                      const ThermalParams& p) {
  const double shift = cocycle(t, r.direction, p);
  return ResolventGenerator(r.z + Complex(0.0, shift), evolve_direction(t, r.direction, p));
}

ResolventExpression automorphism_apply(double t, const ResolventExpression& expr,
                                       const ThermalParams& p) {
  ResolventExpression out;
  out.prefactor = expr.prefactor;
  for (const auto& r : expr.factors) out.factors.push_back(automorphism_apply(t, r, p));
  return out;
}

Complex half_line_gaussian_laplace(Complex p, double q) {
  if (!(p.real() > 0.0)) throw DomainError("half-line Laplace integral requires Re p > 0");
  if (q < 1e-14) return 1.0 / p;
  const double root = 0.5 * std::sqrt(q);  // sqrt(q/4)
  const Complex w = p / (2.0 * root);
  return 0.5 * std::sqrt(kPi) / root * erfcx(w);
}

Complex resolvent_expectation(Complex z, const Direction& f, const ThermalParams& p) {
  if (z.real() == 0.0) throw DomainError("resolvent expectation requires Re z != 0");
  if (z.real() < 0.0) return -resolvent_expectation(-z, negate(f), p);
  const double a = displaced_mean(f, p).real();
  const double q = q_total(f, p);
  return Complex(0.0, -1.0) * half_line_gaussian_laplace(z - Complex(0.0, a), q);
}

Complex resolvent_expectation_quadrature(Complex z, const Direction& f, const ThermalParams& p) {
  if (z.real() == 0.0) throw DomainError("resolvent expectation requires Re z != 0");
  if (z.real() < 0.0) return -resolvent_expectation_quadrature(-z, negate(f), p);
  const double a = displaced_mean(f, p).real();
  const double q = q_total(f, p);
  const double rate = z.real();
  const double T = upper_cut(rate, 0.25 * q);
  const double freq = a - z.imag();
  ScalarField amplitude = [&](double t) {
    return std::exp(Complex(-rate * t - 0.25 * q * t * t, 0.0));
  };
  const Complex integral =
      oscillatory_integral(amplitude, 0.0, T, freq, 1.0, std::max(T / 16.0, 1e-6), p.quadrature);
  return Complex(0.0, -1.0) * integral;
}

Complex resolvent_expectation_laplace(Complex z, const Direction& f, const ThermalParams& p) {
  if (z.real() == 0.0) throw DomainError("resolvent expectation requires Re z != 0");
  if (z.real() < 0.0) return -resolvent_expectation_laplace(-z, negate(f), p);
  const double q = q_total(f, p);
  const double T = upper_cut(z.real(), 0.25 * q);
  QuadratureSpec quad = p.quadrature;
  quad.abs_tol = std::max(quad.abs_tol, 1e-12);
  ScalarField integrand = [&](double t) {
    return std::exp(-z * t) * weyl_expectation(scale_direction(-t, f), p);
  };
  return Complex(0.0, -1.0) * integrate(integrand, 0.0, T, quad);
}

Complex resolvent_two_point(Complex z, const Direction& f, Complex w, const Direction& g,
                            const ThermalParams& p) {
  if (z.real() == 0.0 || w.real() == 0.0)
    throw DomainError("resolvent two-point requires both first arguments off the imaginary axis");
  Complex sign{1.0, 0.0};
  Direction fd = f, gd = g;
  if (z.real() < 0.0) {
    z = -z;
    fd = negate(fd);
    sign = -sign;
  }
  if (w.real() < 0.0) {
    w = -w;
    gd = negate(gd);
    sign = -sign;
  }
  const double a = displaced_mean(fd, p).real();
  const double b = displaced_mean(gd, p).real();
  const double qf = q_total(fd, p);
  const double qg = q_total(gd, p);
  if (qf < 1e-14 && qg < 1e-14) {
    // degenerate Gaussian: the double integral factorizes exactly
    return sign * resolvent_expectation(z, fd, p) * resolvent_expectation(w, gd, p);
  }
  const double qx = q_cross_real(fd, gd, p);
  const double sig = direction_inner(fd, gd, p).imag();
  const Complex pz = z - Complex(0.0, a);
  const Complex pw = w - Complex(0.0, b);
  const Complex cross(0.5 * qx, 0.5 * sig);
  auto F = [&](double s, double t) {
    return std::exp(-pz * s - pw * t - 0.25 * qf * s * s - 0.25 * qg * t * t - cross * s * t);
  };
  const double S = upper_cut(z.real(), 0.25 * qf);
  const double T = upper_cut(w.real(), 0.25 * qg);
  const Complex integral = integrate2d(F, S, T, 1e-10);
  return -sign * integral;
}

Complex expectation(const ResolventExpression& expr, const ThermalParams& p) {
  switch (expr.factors.size()) {
    case 0:
      return expr.prefactor;
    case 1:
      return expr.prefactor *
             resolvent_expectation(expr.factors[0].z, expr.factors[0].direction, p);
    case 2:
      return expr.prefactor * resolvent_two_point(expr.factors[0].z, expr.factors[0].direction,
                                                  expr.factors[1].z, expr.factors[1].direction, p);
    default:
      throw DomainError("closed-form expectations cover products of at most two resolvents");
  }
}

double resolvent_kms_residual(double lambda, const Direction& f, double mu_, const Direction& g,
                              double t, const ThermalParams& p) {
  if (lambda == 0.0 || mu_ == 0.0) throw DomainError("resolvent KMS check requires nonzero lambdas");
  Direction fd = f, gd = g;
  if (lambda < 0.0) {
    lambda = -lambda;
    fd = negate(fd);
  }
  if (mu_ < 0.0) {
    mu_ = -mu_;
    gd = negate(gd);
  }
  // |psi(R(lambda,f) alpha_{t+i beta}(R(mu,g))) - psi(alpha_t(R(mu,g)) R(lambda,f))|
  //   <= Laplace transform of the Weyl-level residual (overall signs cancel)
  auto D = [&](double s, double u) {
    const Direction fs = scale_direction(-s, fd);
    const Direction gu = scale_direction(-u, gd);
    const Complex lhs = weyl_pair_correlation_shifted(fs, gu, t, p);
    const Complex rhs = weyl_pair_correlation_reversed(fs, gu, t, p);
    return std::exp(Complex(-lambda * s - mu_ * u, 0.0)) * (lhs - rhs);
  };
  const double S = kExpCutoff / lambda;
  const double U = kExpCutoff / mu_;
  return std::abs(integrate2d(D, S, U, 1e-9));
}

DirectionClass classify_direction(const ContinuumFunction& f, const Dispersion& disp,
                                  IrExponentMode mode) {
  const IrClassification c = ir_classify(f, disp, mode);
  return DirectionClass{c.in_xphys, c.in_x0};
}

QuotientStatus quotient_project(const ResolventExpression& expr, const Dispersion& disp,
                                IrExponentMode mode) {
  for (const auto& factor : expr.factors) {
    const auto* cf = std::get_if<ContinuumFunction>(&factor.direction);
    if (!cf) throw DomainError("quotient projection classifies continuum directions");
    if (!classify_direction(*cf, disp, mode).in_xphys) return QuotientStatus::in_ideal;
  }
  return QuotientStatus::in_physical_algebra;
}

// ---------------------------------------------------------------------------
// relation suite
// ---------------------------------------------------------------------------

namespace {

using fock::Matrix;
using fock::TruncationSpec;

LatticeFunction random_function(const TruncationSpec& spec, Rng& rng, double amplitude) {
  LatticeFunction f;
  for (const auto& mode : spec.modes) f[mode.n] = rng.complex_normal(amplitude);
  return f;
}

struct PanelWorkspace {
  Matrix panel;                     // dim x q
  std::vector<Eigen::Index> rows;   // low-occupation rows

  explicit PanelWorkspace(const TruncationSpec& spec, int cut) {
    panel = fock::low_block_panel(spec, cut);
    const auto occ = fock::total_occupations(spec);
    for (std::size_t i = 0; i < occ.size(); ++i)
      if (occ[i] <= cut) rows.push_back(Eigen::Index(i));
  }

  double block_norm(const Matrix& columns) const {
    Matrix block(rows.size(), columns.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) block.row(Eigen::Index(r)) = columns.row(rows[r]);
    Eigen::JacobiSVD<Matrix> svd(block);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  }
};

struct ResolventSolver {
  Eigen::PartialPivLU<Matrix> lu;

  ResolventSolver(Complex z, const Matrix& phi) {
    const auto dim = phi.rows();
    Matrix lhs = Complex(0.0, 1.0) * z * Matrix::Identity(dim, dim) - phi;
    lu.compute(lhs);
  }

  Matrix apply(const Matrix& columns) const { return lu.solve(columns); }

  // solve A* X = B from the factorization P A = L U: A* = U* L* P
  Matrix adjoint_solve(const Matrix& columns) const {
    Matrix v = lu.matrixLU().triangularView<Eigen::Upper>().adjoint().solve(columns);
    Matrix u = lu.matrixLU().triangularView<Eigen::UnitLower>().adjoint().solve(v);
    return lu.permutationP().inverse() * u;
  }
};

}  // namespace

bool RelationReport::pass(double tolerance, double same_direction_tolerance) const {
  for (const auto& [name, value] : max_residuals) {
    const double tol = (name == "same-direction-commutation") ? same_direction_tolerance : tolerance;
    if (!(value <= tol)) return false;
  }
  return !max_residuals.empty();
}

RelationReport relation_suite(const fock::TruncationSpec& spec, const RelationSuiteConfig& cfg,
                              std::uint64_t seed) {
  RelationReport report;
  report.draws = cfg.draws;
  Rng rng(seed);
  PanelWorkspace ws(spec, cfg.low_block);
  const Matrix& P = ws.panel;
  auto& res = report.max_residuals;
  auto track = [&](const std::string& name, double value) {
    auto [it, inserted] = res.try_emplace(name, value);
    if (!inserted && value > it->second) it->second = value;
  };

  for (int draw = 0; draw < cfg.draws; ++draw) {
    const LatticeFunction f = random_function(spec, rng, cfg.amplitude);
    const LatticeFunction g = random_function(spec, rng, cfg.amplitude);
    double lam, mu;
    do {
      lam = rng.uniform(cfg.lambda_min, cfg.lambda_max) * rng.sign();
      mu = rng.uniform(cfg.lambda_min, cfg.lambda_max) * rng.sign();
    } while (std::abs(lam + mu) < cfg.sum_min);
    const double nu = rng.uniform(0.5, 2.0) * rng.sign();
    double mu2 = rng.uniform(cfg.lambda_min, cfg.lambda_max) * rng.sign();
    if (std::abs(mu2 - lam) < 0.2) mu2 += 0.5;
    Complex zc, wc;
    do {
      zc = Complex(rng.uniform(cfg.lambda_min, cfg.lambda_max) * rng.sign(),
                   rng.uniform(-1.5, 1.5));
      wc = Complex(rng.uniform(cfg.lambda_min, cfg.lambda_max) * rng.sign(),
                   rng.uniform(-1.5, 1.5));
    } while (std::abs(zc.real() + wc.real()) < cfg.sum_min);

    const Matrix phif = fock::segal_field(f, spec).mat;
    const Matrix phig = fock::segal_field(g, spec).mat;
    const Matrix phifg = fock::segal_field(add(f, g), spec).mat;
    const Matrix phinuf = fock::segal_field(scale(nu, f), spec).mat;
    const double sig = inner(f, g).imag();

    // scalar relation R(lambda, 0) = -(i/lambda) 1
    {
      ResolventSolver r0(lam, Matrix::Zero(P.rows(), P.rows()));
      track("scalar", ws.block_norm(r0.apply(P) + Complex(0.0, 1.0 / lam) * P));
      ResolventSolver r0c(zc, Matrix::Zero(P.rows(), P.rows()));
      track("scalar-complex", ws.block_norm(r0c.apply(P) + Complex(0.0, 1.0) / zc * P));
    }

    ResolventSolver rf(lam, phif);
    ResolventSolver rg(mu, phig);
    ResolventSolver rfg(lam + mu, phifg);
    ResolventSolver rf2(mu2, phif);

    // adjoint: R(lambda,f)* = R(-lambda,f)
    {
      ResolventSolver rfm(-lam, phif);
      track("adjoint", ws.block_norm(rf.adjoint_solve(P) - rfm.apply(P)));
      ResolventSolver rzc(zc, phif);
      ResolventSolver rzm(-std::conj(zc), phif);
      track("adjoint-complex", ws.block_norm(rzc.adjoint_solve(P) - rzm.apply(P)));
    }

    // scaling: nu R(nu lambda, nu f) = R(lambda, f)
    {
      ResolventSolver rs(nu * lam, phinuf);
      track("scaling", ws.block_norm(nu * rs.apply(P) - rf.apply(P)));
      ResolventSolver rsc(nu * zc, phinuf);
      ResolventSolver rzc(zc, phif);
      track("scaling-complex", ws.block_norm(nu * rsc.apply(P) - rzc.apply(P)));
    }

    // resolvent identity, both orderings
    {
      const Matrix rfP = rf.apply(P);
      const Matrix rf2P = rf2.apply(P);
      const Complex coef = Complex(0.0, 1.0) * (mu2 - lam);
      track("identity", ws.block_norm(rfP - rf2P - coef * rf.apply(rf2P)));
      track("identity-reversed", ws.block_norm(rfP - rf2P - coef * rf2.apply(rfP)));
    }

    // commutator relation
    {
      const Matrix rfP = rf.apply(P);
      const Matrix rgP = rg.apply(P);
      const Matrix lhs = rf.apply(rgP) - rg.apply(rfP);
      const Matrix rhs = Complex(0.0, sig) * rf.apply(rg.apply(rg.apply(rfP)));
      track("commutator", ws.block_norm(lhs - rhs));
    }

    // product relation
    {
      const Matrix rgP = rg.apply(P);
      const Matrix rfP = rf.apply(P);
      const Matrix lhs = rf.apply(rgP);
      const Matrix inner_sum =
          rfP + rgP + Complex(0.0, sig) * rf.apply(rf.apply(rgP));
      track("product", ws.block_norm(lhs - rfg.apply(inner_sum)));
    }

    // same-direction commutation
    {
      const Matrix rfP = rf.apply(P);
      const Matrix rf2P = rf2.apply(P);
      track("same-direction-commutation", ws.block_norm(rf.apply(rf2P) - rf2.apply(rfP)));
    }
  }
  return report;
}

RelationReport weyl_relation_suite(const fock::TruncationSpec& spec,
                                   const RelationSuiteConfig& cfg, std::uint64_t seed) {
  RelationReport report;
  report.draws = cfg.draws;
  Rng rng(seed);
  PanelWorkspace ws(spec, cfg.low_block);
  const Matrix& P = ws.panel;
  SymplecticSpace space;
  auto& res = report.max_residuals;
  auto track = [&](const std::string& name, double value) {
    auto [it, inserted] = res.try_emplace(name, value);
    if (!inserted && value > it->second) it->second = value;
  };

  for (int draw = 0; draw < cfg.draws; ++draw) {
    const LatticeFunction f = random_function(spec, rng, cfg.amplitude);
    const LatticeFunction g = random_function(spec, rng, cfg.amplitude);
    const Matrix wf = fock::weyl_operator(f, spec).mat;
    const Matrix wg = fock::weyl_operator(g, spec).mat;

    // pairwise Weyl relation through the symbolic reduction
    const WeylWord word = multiply(weyl_generator(Direction{f}), weyl_generator(Direction{g}), space);
    const Matrix wsum = fock::weyl_operator(std::get<LatticeFunction>(word.direction), spec).mat;
    track("weyl-product", ws.block_norm(wf * (wg * P) - word.phase * (wsum * P)));

    // adjoint: W(f)* = W(-f)
    const Matrix wfm = fock::weyl_operator(scale(-1.0, f), spec).mat;
    track("weyl-adjoint", ws.block_norm(wf.adjoint() * P - wfm * P));

    // homomorphism of longer words into the representation
    const LatticeFunction h = random_function(spec, rng, cfg.amplitude);
    const std::vector<WeylWord> gens = {weyl_generator(Direction{f}), weyl_generator(Direction{g}),
                                        weyl_generator(Direction{h})};
    const WeylWord reduced = reduce(gens, space);
    const Matrix wh = fock::weyl_operator(h, spec).mat;
    const Matrix wred =
        fock::weyl_operator(std::get<LatticeFunction>(reduced.direction), spec).mat;
    track("weyl-word-homomorphism",
          ws.block_norm(wf * (wg * (wh * P)) - reduced.phase * (wred * P)));
  }
  return report;
}

}  // namespace vanhove
