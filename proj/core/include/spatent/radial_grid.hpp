#pragma once

#include <cstddef>
#include <vector>

#include "spatent/crystal.hpp"
#include "spatent/quadrature.hpp"

namespace spatent {

/// Quadrature discretization of the radial wavenumber on [0, p_max].
/// Composite Gauss-Legendre with equal panels so the resolution is uniform
/// along the diagonal where the pump confines the kernel.
struct RadialGrid {
  QuadratureRule rule;
  double p_max = 0.0;
  std::size_t n_radial = 0;

  /// n_radial must be a positive multiple of panel_order. Throws ConfigError.
  static RadialGrid make(double p_max, std::size_t n_radial, std::size_t panel_order = 8);

  /// sqrt(w_i p_i): the radial measure p dp folded into kernel matrices.
  [[nodiscard]] std::vector<double> measure_sqrt() const;
};

/// Radial cutoff that covers the phase-matched band, the pump width and the
/// sinc main lobe with a 25 % margin:
///   1.25 [ sqrt(2 k_p alpha L)/2 + 10/w0 + sqrt(4 pi k_p / L) ].
double default_p_max(const CrystalPumpConfig& cfg);

/// 256 for alpha <= 5e-6 um^-2, 512 above, raised to two nodes per pump
/// width 1/sqrt(c) over [0, p_max] for wide pumps.
std::size_t default_n_radial(const CrystalPumpConfig& cfg, double p_max);

/// Smallest power of two that resolves the azimuthal pump confinement at
/// p_max (the spiral spectrum at radius p has width sqrt(2 c) p for pump
/// exponent c), and never below 4096 for chirped or 256 for unchirped crystals.
std::size_t default_n_phi(const CrystalPumpConfig& cfg, double p_max);

}  // namespace spatent
