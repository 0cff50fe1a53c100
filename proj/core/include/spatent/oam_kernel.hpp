#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "spatent/crystal.hpp"
#include "spatent/faddeeva.hpp"
#include "spatent/radial_grid.hpp"

namespace spatent {

/// Two-photon amplitude as a function of (p, q, phi_p - phi_q).
using AngularAmplitude = std::function<Complex(double p, double q, double delta_phi)>;

/// Radial kernel B_l(p, q) of one OAM sector.
using RadialKernel = std::function<Complex(double p, double q)>;

/// Coefficient of e^{i l dphi} in the Fourier series of dphi -> psi(p, q, dphi),
/// computed with the n_phi-point trapezoid rule (a discrete Fourier transform).
///
/// n_phi must be a power of two with n_phi >= 4 (|l| + 1). Throws ConvergenceError
/// when |B_{n_phi/2-1}| exceeds 1e-10 |B_0| (the angular sampling aliases).
Complex azimuthal_project(int l, double p, double q, const AngularAmplitude& psi, std::size_t n_phi);

/// Same, for the SPDC joint amplitude of `cfg`.
Complex azimuthal_project(int l, double p, double q, const CrystalPumpConfig& cfg, std::size_t n_phi);

/// Dense radial kernel of one OAM sector on a grid.
struct OamKernel {
  int l = 0;
  RadialGrid grid;
  /// Row-major B_l(p_i, q_j).
  std::vector<Complex> values;

  [[nodiscard]] std::size_t size() const noexcept { return grid.n_radial; }
  [[nodiscard]] Complex at(std::size_t i, std::size_t j) const { return values[i * grid.n_radial + j]; }

  /// M_ij = sqrt(w_i p_i) B_l(p_i, q_j) sqrt(w_j q_j). Its singular values squared,
  /// times (2 pi)^2 from the angular modes, are the Schmidt coefficients of the
  /// continuous kernel in this sector.
  [[nodiscard]] std::vector<Complex> weighted() const;
};

OamKernel build_kernel(int l, const RadialGrid& grid, const CrystalPumpConfig& cfg, std::size_t n_phi);
OamKernel build_kernel(int l, const RadialGrid& grid, const AngularAmplitude& psi, std::size_t n_phi);
OamKernel build_kernel(int l, const RadialGrid& grid, const RadialKernel& kernel);

}  // namespace spatent
