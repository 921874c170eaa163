#include "vanhove/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vanhove/errors.hpp"

namespace vanhove {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct PanelEstimate {
  Complex kronrod;
  double error;
};

PanelEstimate gk15(const ScalarField& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Complex fc = f(c);
  Complex resg = fc * kWg[3];
  Complex resk = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    Complex f1 = f(c - h * kXgk[j]);
    Complex f2 = f(c + h * kXgk[j]);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {resk * h, std::abs(resk - resg) * h};
}

struct AdaptiveState {
  long panels = 0;
  long budget = 200000;
};

void adaptive(const ScalarField& f, double a, double b, double tol, int depth,
              const QuadratureSpec& spec, Complex& acc, double& err_acc, AdaptiveState& state) {
  PanelEstimate e = gk15(f, a, b);
  if (++state.panels > state.budget)
    throw ConvergenceError("adaptive quadrature exceeded its panel budget");
  // the |K15 - G7| estimator bottoms out at roundoff of the panel value;
  // below that floor further bisection only multiplies panels
  const double floor = 64.0 * 1e-16 * std::abs(e.kronrod);
  if (e.error <= std::max(tol, floor) || depth >= spec.max_depth) {
    acc += e.kronrod;
    err_acc += e.error;
    return;
  }
  const double m = 0.5 * (a + b);
  adaptive(f, a, m, 0.5 * tol, depth + 1, spec, acc, err_acc, state);
  adaptive(f, m, b, 0.5 * tol, depth + 1, spec, acc, err_acc, state);
}

}  // namespace

Complex integrate(const ScalarField& f, double a, double b, const QuadratureSpec& spec) {
  if (!(b > a)) return 0.0;
  PanelEstimate coarse = gk15(f, a, b);
  double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(coarse.kronrod));
  Complex acc = 0.0;
  double err = 0.0;
  AdaptiveState state;
  adaptive(f, a, b, tol, 0, spec, acc, err, state);
  return acc;
}

Complex integrate_from_origin(const ScalarField& f, double upper, const QuadratureSpec& spec) {
  if (!(upper > 0.0)) return 0.0;
  Complex total = 0.0;
  double hi = upper;
  double prev = 0.0;
  int flat_count = 0;
  for (int level = 0; level < spec.max_origin_levels; ++level) {
    const double lo = hi * 0.5;
    Complex piece = integrate(f, lo, hi, spec);
    total += piece;
    const double mag = std::abs(piece);
    const double scale = std::max(1.0, std::abs(total));
    if (level > 4 && mag < spec.abs_tol * 0.01 * scale) return total;
    if (level > 8 && prev > 0.0 && mag > spec.divergence_ratio * prev) {
      if (++flat_count >= 6)
        throw QuadratureDivergence("radial integral does not converge at r = 0");
    } else {
      flat_count = 0;
    }
    prev = mag;
    hi = lo;
  }
  // Residual [0, hi] estimated by one last panel; geometric decay has already
  // been established, so this is below tolerance.
  total += integrate(f, 0.0, hi, spec);
  return total;
}

namespace {

// Moments m_k = integral_{-1}^{1} x^k e^{i theta x} dx for k = 0, 1, 2.
void filon_moments(double theta, Complex& m0, Complex& m1, Complex& m2) {
  if (std::abs(theta) < 0.5) {
    // power series, |theta| < 1/2 keeps 24 terms far below double precision
    Complex it(0.0, theta);
    Complex term(1.0, 0.0);
    m0 = m1 = m2 = 0.0;
    for (int k = 0; k < 24; ++k) {
      if (k % 2 == 0) {
        m0 += term / double(k + 1);
        m2 += term / double(k + 3);
      } else {
        m1 += term / double(k + 2);
      }
      term *= it / double(k + 1);
    }
    m0 *= 2.0;
    m1 *= 2.0;
    m2 *= 2.0;
    return;
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  m0 = 2.0 * s / theta;
  m1 = Complex(0.0, 2.0) * (s / (theta * theta) - c / theta);
  m2 = 2.0 * ((theta * theta - 2.0) * s + 2.0 * theta * c) / (theta * theta * theta);
}

Complex filon_panel(const ScalarField& B, double a, double b, double t) {
  const double h = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Complex m0, m1, m2;
  filon_moments(t * h, m0, m1, m2);
  const Complex b0 = B(a), b1 = B(mid), b2 = B(b);
  const Complex c0 = b1;
  const Complex c1 = 0.5 * (b2 - b0);
  const Complex c2 = 0.5 * (b2 + b0) - b1;
  return h * std::exp(Complex(0.0, t * mid)) * (c0 * m0 + c1 * m1 + c2 * m2);
}

Complex adaptive_filon(const ScalarField& B, double a, double b, double t, double tol, int depth,
                       int max_depth, long& panels) {
  Complex whole = filon_panel(B, a, b, t);
  const double mid = 0.5 * (a + b);
  Complex left = filon_panel(B, a, mid, t);
  Complex right = filon_panel(B, mid, b, t);
  if (++panels > 200000) throw ConvergenceError("Filon quadrature exceeded its panel budget");
  const double floor = 64.0 * 1e-16 * (std::abs(left) + std::abs(right));
  if (depth >= 2 &&
      (std::abs(whole - left - right) < std::max(tol, floor) || depth >= max_depth))
    return left + right;
  return adaptive_filon(B, a, mid, t, 0.5 * tol, depth + 1, max_depth, panels) +
         adaptive_filon(B, mid, b, t, 0.5 * tol, depth + 1, max_depth, panels);
}

}  // namespace

Complex oscillatory_integral(const ScalarField& A, double a, double b, double t, double s,
                             double scale_hint, const QuadratureSpec& spec) {
  if (!(b > a)) return 0.0;
  if (t == 0.0 && s == 1.0) {
    // no oscillation; fall through to the same mesh for uniform behavior
  }
  // substitute u = r^s: integral B(u) e^{i t u} du with
  // B(u) = A(u^{1/s}) u^{1/s - 1} / s
  const double inv_s = 1.0 / s;
  ScalarField B = [&](double u) -> Complex {
    if (u <= 0.0) return 0.0;
    const double r = (s == 1.0) ? u : std::pow(u, inv_s);
    const double jac = (s == 1.0) ? 1.0 : inv_s * std::pow(u, inv_s - 1.0);
    return A(r) * jac;
  };
  const double ua = (s == 1.0) ? a : std::pow(std::max(a, 0.0), s);
  const double ub = (s == 1.0) ? b : std::pow(b, s);
  const double uhint = (s == 1.0) ? scale_hint : std::pow(scale_hint, s);

  // Seed mesh: geometric ramp through the feature scale, then linear panels.
  std::vector<double> pts;
  pts.push_back(ua);
  double x = std::max(ua, uhint / 64.0);
  while (x < 4.0 * uhint && x < ub) {
    if (x > pts.back()) pts.push_back(x);
    x *= 2.0;
  }
  while (pts.back() < ub) pts.push_back(std::min(ub, pts.back() + std::max(uhint, 1e-8)));

  Complex total = 0.0;
  long panels = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double frac = (pts[i + 1] - pts[i]) / (ub - ua);
    total += adaptive_filon(B, pts[i], pts[i + 1], t, std::max(spec.abs_tol * frac, 1e-16),
                            0, spec.max_depth, panels);
  }
  return total;
}

}  // namespace vanhove
