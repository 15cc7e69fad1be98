#pragma once

#include <complex>

namespace mwsim {

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z) for Im(z) >= 0.
///
/// Rational approximation of Weideman (SIAM J. Numer. Anal. 31, 1994) with
/// N = 64 terms for |z| < 8 (coefficients computed once at startup from the
/// defining cosine transform, no stored tables), asymptotic series in 1/z^2
/// for |z| >= 8. Relative accuracy ~1e-13 across the upper half plane.
std::complex<double> faddeeva_w(std::complex<double> z);

/// Complex Fresnel integral T(x) = C(x) + i S(x) = int_0^x exp(i pi t^2 / 2) dt,
/// odd in x. Evaluated through the Faddeeva function on the arg = pi/4 ray:
/// T(x) = e^{i pi/4}/sqrt(2) (1 - e^{i pi x^2/2} w(e^{i pi/4} sqrt(pi/2) x)).
///
/// Absolute accuracy ~1e-15; relative accuracy ~1e-13 up to x ~ 3e3 (phase
/// rounding in pi x^2 / 2 dominates beyond).
std::complex<double> fresnel_cs(double x);

}  // namespace mwsim
