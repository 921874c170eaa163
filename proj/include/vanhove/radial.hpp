#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vanhove/quadrature.hpp"

namespace vanhove {

// Radial test function in momentum space: r -> fhat(r) on r >= 0, together
// with the origin and decay orders the infrared classifier needs.
//   fhat(r) = value_at_zero + O(r^origin_order)   near 0
//   fhat(r) = O(r^{-decay_order})                 at infinity
// Membership in L^1 cap L^2 requires decay_order > 3.
class RadialProfile {
 public:
  RadialProfile(std::function<Complex(double)> eval, Complex value_at_zero, double origin_order,
                double decay_order, double support_radius, std::string label);

  Complex operator()(double r) const { return eval_(r); }
  Complex value_at_zero() const { return value_at_zero_; }
  double origin_order() const { return origin_order_; }
  double decay_order() const { return decay_order_; }
  // radius beyond which |fhat| is numerically negligible (or the larger
  // integration cutoff for slowly decaying tables)
  double support_radius() const { return support_radius_; }
  const std::string& label() const { return label_; }

  // amplitude * exp(-(r/width)^2)
  static RadialProfile gaussian(Complex amplitude, double width);
  // compactly supported smooth bump on [center-width, center+width], center > width
  static RadialProfile shell_bump(double center, double width, Complex amplitude);
  // amplitude * r^p * exp(-(r/width)^2); p > 0 gives fhat(0) = 0 with origin order p
  static RadialProfile poly_gaussian(double p, Complex amplitude, double width);
  // linear interpolation of (r, value) samples; zero beyond the table
  static RadialProfile from_table(std::vector<std::pair<double, Complex>> samples,
                                  double origin_order = 1.0, double decay_order = 1e300);

 private:
  std::function<Complex(double)> eval_;
  Complex value_at_zero_;
  double origin_order_;
  double decay_order_;
  double support_radius_;
  std::string label_;
};

// Formal complex combination of radial profiles, each carrying a free-time
// shift: term(r) = coeff * e^{i t omega(r)} * profile(r). Sums of distinct
// radial profiles need not be radial in position space, but every form used
// here is (sesqui)linear, so evaluation distributes over the terms.
struct ContinuumTerm {
  Complex coeff{1.0, 0.0};
  std::shared_ptr<const RadialProfile> profile;
  double time_shift = 0.0;
};

struct ContinuumFunction {
  std::vector<ContinuumTerm> terms;

  ContinuumFunction() = default;
  explicit ContinuumFunction(RadialProfile p, Complex coeff = 1.0)
      : terms{{coeff, std::make_shared<RadialProfile>(std::move(p)), 0.0}} {}

  Complex value_at_zero() const;  // omega(0) = 0 makes time shifts drop out
  bool empty() const;

  ContinuumFunction operator+(const ContinuumFunction& other) const;
  ContinuumFunction operator-() const;
  ContinuumFunction scaled(Complex c) const;
  ContinuumFunction time_evolved(double t) const;
  double support_radius() const;
  double min_feature_scale() const;
};

}  // namespace vanhove
