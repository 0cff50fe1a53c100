#pragma once

#include "spatent/crystal.hpp"

namespace spatent {

/// Full widths at half maximum of the conditional coincidence density
/// p -> |Psi(p, q_fixed)|^2, measured along the ray from the origin through the
/// peak (radial, um^-1) and along the circle through the peak (azimuthal, rad).
struct CorrelatedArea {
  double radial_width = 0.0;
  double azimuthal_width = 0.0;
  double q = 0.0;
  double phi_q = 0.0;
  double peak_p = 0.0;
  double peak_phi = 0.0;
};

/// Requires q > 0. Throws ConvergenceError when the density has no interior
/// maximum in the pump-confined disk around -q_fixed or a half-maximum
/// crossing cannot be bracketed.
CorrelatedArea correlated_area(const CrystalPumpConfig& cfg, double q, double phi_q = 0.0);

/// Middle of the phase-matched radial band, (1/4) sqrt(k_p (alpha L + 4 pi / L)).
/// For alpha = 0 this is half the radius of the first sinc zero.
double default_conditioning_radius(const CrystalPumpConfig& cfg);

}  // namespace spatent
