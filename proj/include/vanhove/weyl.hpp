#pragma once

#include <span>
#include <variant>

#include "vanhove/forms.hpp"

namespace vanhove {

// A direction is a test function of either kind; the Weyl relations only ever
// consult the symplectic form, so the two kinds share the word algebra.
using Direction = std::variant<LatticeFunction, ContinuumFunction>;

Direction add(const Direction& f, const Direction& g);  // throws on kind mismatch
Direction negate(const Direction& f);
Direction scale_direction(Complex c, const Direction& f);
bool is_zero_direction(const Direction& f);

// Evaluates inner products for both direction kinds. Continuum evaluation
// needs a dispersion (time shifts) and quadrature settings.
class SymplecticSpace {
 public:
  SymplecticSpace() = default;
  explicit SymplecticSpace(ContinuumContext ctx) : ctx_(std::move(ctx)), has_ctx_(true) {}

  Complex inner(const Direction& f, const Direction& g) const;
  double sigma(const Direction& f, const Direction& g) const {  // Im <f, g>
    return inner(f, g).imag();
  }

 private:
  ContinuumContext ctx_{};
  bool has_ctx_ = false;
};

// Unit phase times a generator: phase * W(direction).
struct WeylWord {
  Complex phase{1.0, 0.0};
  Direction direction;
};

WeylWord weyl_generator(Direction f);

// W(f) W(g) = e^{-(i/2) Im<f,g>} W(f+g)
WeylWord multiply(const WeylWord& a, const WeylWord& b, const SymplecticSpace& space);

// (phase W(f))* = conj(phase) W(-f)
WeylWord adjoint(const WeylWord& w);

// left fold of the Weyl relations; association-independent by bilinearity of
// the symplectic form
WeylWord reduce(std::span<const WeylWord> words, const SymplecticSpace& space);

}  // namespace vanhove
