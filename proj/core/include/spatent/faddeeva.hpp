#pragma once

#include <complex>

namespace spatent {

using Complex = std::complex<double>;

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
///
/// Upper half-plane values come from a Laplace continued fraction far from
/// the origin and from the exponentially convergent sum of Zaghloul and Ali
/// (ACM TOMS 916) elsewhere. The lower half-plane is reached through
/// w(z) = 2 exp(-z^2) - w(-z); there the result overflows to infinity once
/// |w(z)| itself exceeds the double range.
///
/// Relative accuracy is better than 1e-12 for |z| <= 50.
Complex faddeeva(Complex z);

/// Error function of a complex argument, erf(z) = 1 - exp(-z^2) w(iz).
Complex erf_complex(Complex z);

/// Scaled complementary error function exp(x^2) erfc(x) for real x.
double erfcx(double x);

/// Principal square root of i, e^{i pi/4}.
inline const Complex sqrt_i{0.70710678118654752440, 0.70710678118654752440};

}  // namespace spatent
