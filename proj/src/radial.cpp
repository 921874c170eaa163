#include "vanhove/radial.hpp"

#include <algorithm>
#include <cmath>

#include "vanhove/errors.hpp"

namespace vanhove {

RadialProfile::RadialProfile(std::function<Complex(double)> eval, Complex value_at_zero,
                             double origin_order, double decay_order, double support_radius,
                             std::string label)
    : eval_(std::move(eval)),
      value_at_zero_(value_at_zero),
      origin_order_(origin_order),
      decay_order_(decay_order),
      support_radius_(support_radius),
      label_(std::move(label)) {}

RadialProfile RadialProfile::gaussian(Complex amplitude, double width) {
  if (!(width > 0.0)) throw DomainError("gaussian profile requires width > 0");
  const double w2 = width * width;
  return RadialProfile([amplitude, w2](double r) { return amplitude * std::exp(-r * r / w2); },
                       amplitude, 2.0, 1e300, width * 10.0,
                       "gaussian(w=" + std::to_string(width) + ")");
}

RadialProfile RadialProfile::shell_bump(double center, double width, Complex amplitude) {
  if (!(center > width) || !(width > 0.0))
    throw DomainError("shell bump requires center > width > 0");
  auto eval = [center, width, amplitude](double r) -> Complex {
    const double x = (r - center) / width;
    if (std::abs(x) >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - x * x));
  };
  return RadialProfile(eval, 0.0, 1e300, 1e300, center + width,
                       "shell-bump(c=" + std::to_string(center) + ")");
}

RadialProfile RadialProfile::poly_gaussian(double p, Complex amplitude, double width) {
  if (!(p >= 0.0) || !(width > 0.0))
    throw DomainError("poly-gaussian profile requires p >= 0 and width > 0");
  const double w2 = width * width;
  auto eval = [p, amplitude, w2](double r) -> Complex {
    if (r == 0.0) return p == 0.0 ? amplitude : Complex(0.0, 0.0);
    return amplitude * std::pow(r, p) * std::exp(-r * r / w2);
  };
  Complex v0 = p == 0.0 ? amplitude : Complex(0.0, 0.0);
  double origin = p == 0.0 ? 2.0 : p;
  return RadialProfile(eval, v0, origin, 1e300, width * 12.0,
                       "poly-gaussian(p=" + std::to_string(p) + ")");
}

RadialProfile RadialProfile::from_table(std::vector<std::pair<double, Complex>> samples,
                                        double origin_order, double decay_order) {
  if (samples.size() < 2) throw DomainError("sampled profile needs at least two rows");
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (samples.front().first < 0.0) throw DomainError("sampled profile has negative radius");
  Complex v0 = samples.front().first == 0.0 ? samples.front().second : samples.front().second;
  double rmax = samples.back().first;
  auto eval = [samples = std::move(samples)](double r) -> Complex {
    if (r <= samples.front().first) return samples.front().second;
    if (r >= samples.back().first) return 0.0;
    auto it = std::lower_bound(samples.begin(), samples.end(), r,
                               [](const auto& s, double x) { return s.first < x; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double u = (r - lo.first) / (hi.first - lo.first);
    return lo.second + u * (hi.second - lo.second);
  };
  return RadialProfile(eval, v0, origin_order, decay_order, rmax, "table");
}

Complex ContinuumFunction::value_at_zero() const {
  Complex out = 0.0;
  for (const auto& t : terms) out += t.coeff * t.profile->value_at_zero();
  return out;
}

bool ContinuumFunction::empty() const {
  for (const auto& t : terms)
    if (t.coeff != Complex(0.0, 0.0)) return false;
  return true;
}

ContinuumFunction ContinuumFunction::operator+(const ContinuumFunction& other) const {
  ContinuumFunction out = *this;
  out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
  return out;
}

ContinuumFunction ContinuumFunction::operator-() const { return scaled(-1.0); }

ContinuumFunction ContinuumFunction::scaled(Complex c) const {
  ContinuumFunction out = *this;
  for (auto& t : out.terms) t.coeff *= c;
  return out;
}

ContinuumFunction ContinuumFunction::time_evolved(double t) const {
  ContinuumFunction out = *this;
  for (auto& term : out.terms) term.time_shift += t;
  return out;
}

double ContinuumFunction::support_radius() const {
  double r = 0.0;
  for (const auto& t : terms) r = std::max(r, t.profile->support_radius());
  return r;
}

double ContinuumFunction::min_feature_scale() const {
  double s = 1e300;
  for (const auto& t : terms) s = std::min(s, t.profile->support_radius());
  return s == 1e300 ? 1.0 : std::max(s * 0.1, 1e-6);
}

}  // namespace vanhove
