#pragma once

#include "spatent/crystal.hpp"

namespace spatent {

/// Geometric ratio mu of the Schmidt spectrum (1 - mu) mu^n of the 1D kernel
/// exp(-a (x^2 + y^2) - 2 b x y), a > |b|.
double double_gaussian_ratio(double a, double b);

/// Entropy in ebits of the geometric spectrum (1 - mu) mu^n.
double geometric_entropy(double mu);

/// Entropy of the unchirped amplitude with sinc(x) replaced by exp(-gamma x).
/// x = L |p - q|^2 / 4k_p is quadratic in the wavenumbers, so the amplitude
/// factorizes into two Cartesian double Gaussians and E = 2 E_1D.
/// The widths are set by the pump exponent c w0^2 and gamma L / 4k_p, i.e. by
/// L / L_d with the Rayleigh range L_d = k_p w0^2 / 2. Requires alpha = 0.
double gaussian_approx_entropy(const CrystalPumpConfig& cfg, double gamma_fit);

struct GammaCalibration {
  double gamma = 0.0;
  double target_entropy = 0.0;
  double reference_length_um = 0.0;
};

/// gamma for which gaussian_approx_entropy(reference) equals target_entropy (bisection).
GammaCalibration calibrate_sinc_gamma(const CrystalPumpConfig& reference, double target_entropy);

/// Calibration against E = 4.2 ebits for a 20 mm crystal with cfg's pump and
/// waist convention.
GammaCalibration default_sinc_gamma(const CrystalPumpConfig& cfg);

/// gaussian_approx_entropy with default_sinc_gamma.
double gaussian_approx_entropy(const CrystalPumpConfig& cfg);

}  // namespace spatent
