#pragma once

#include <complex>

namespace vanhove {

// Faddeeva function w(z) = e^{-z^2} erfc(-i z) for Im z >= 0
// (Weideman's rational approximation, N = 40; ~1e-14 relative accuracy).
std::complex<double> faddeeva_w(std::complex<double> z);

// Scaled complementary error function erfcx(w) = e^{w^2} erfc(w) for
// Re w >= 0, evaluated without overflow.
std::complex<double> erfcx(std::complex<double> w);

}  // namespace vanhove
