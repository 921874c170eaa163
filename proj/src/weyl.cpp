#include "vanhove/weyl.hpp"

#include <cmath>

#include "vanhove/errors.hpp"

namespace vanhove {

namespace {

[[noreturn]] void kind_mismatch() {
  throw DomainError("cannot combine a lattice direction with a continuum direction");
}

}  // namespace

Direction add(const Direction& f, const Direction& g) {
  if (auto* lf = std::get_if<LatticeFunction>(&f)) {
    auto* lg = std::get_if<LatticeFunction>(&g);
    if (!lg) kind_mismatch();
    return vanhove::add(*lf, *lg);
  }
  const auto& cf = std::get<ContinuumFunction>(f);
  auto* cg = std::get_if<ContinuumFunction>(&g);
  if (!cg) kind_mismatch();
  return cf + *cg;
}

Direction negate(const Direction& f) { return scale_direction(-1.0, f); }

Direction scale_direction(Complex c, const Direction& f) {
  if (auto* lf = std::get_if<LatticeFunction>(&f)) return scale(c, *lf);
  return std::get<ContinuumFunction>(f).scaled(c);
}

bool is_zero_direction(const Direction& f) {
  if (auto* lf = std::get_if<LatticeFunction>(&f)) {
    for (const auto& [n, v] : *lf)
      if (v != Complex(0.0, 0.0)) return false;
    return true;
  }
  return std::get<ContinuumFunction>(f).empty();
}

Complex SymplecticSpace::inner(const Direction& f, const Direction& g) const {
  if (auto* lf = std::get_if<LatticeFunction>(&f)) {
    auto* lg = std::get_if<LatticeFunction>(&g);
    if (!lg) kind_mismatch();
    return vanhove::inner(*lf, *lg);
  }
  const auto& cf = std::get<ContinuumFunction>(f);
  auto* cg = std::get_if<ContinuumFunction>(&g);
  if (!cg) kind_mismatch();
  if (!has_ctx_)
    throw DomainError("continuum directions need a SymplecticSpace with a quadrature context");
  return vanhove::inner(cf, *cg, ctx_);
}

WeylWord weyl_generator(Direction f) { return WeylWord{Complex(1.0, 0.0), std::move(f)}; }

WeylWord multiply(const WeylWord& a, const WeylWord& b, const SymplecticSpace& space) {
  const double s = space.sigma(a.direction, b.direction);
  WeylWord out;
  out.phase = a.phase * b.phase * std::exp(Complex(0.0, -0.5 * s));
  out.direction = add(a.direction, b.direction);
  const double drift = std::abs(std::abs(out.phase) - 1.0);
  if (drift > 1e-12) throw DomainError("Weyl word phase drifted off the unit circle");
  out.phase /= std::abs(out.phase);
  return out;
}

WeylWord adjoint(const WeylWord& w) { return WeylWord{std::conj(w.phase), negate(w.direction)}; }

WeylWord reduce(std::span<const WeylWord> words, const SymplecticSpace& space) {
  if (words.empty()) throw DomainError("reduce requires a nonempty generator list");
  WeylWord acc = words[0];
  for (std::size_t i = 1; i < words.size(); ++i) acc = multiply(acc, words[i], space);
  return acc;
}

}  // namespace vanhove
