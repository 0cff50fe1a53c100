#pragma once

#include <cstddef>

#include "spatent/crystal.hpp"
#include "spatent/faddeeva.hpp"

namespace spatent {

/// Signal and idler transverse wavenumbers in polar form.
/// p, q in um^-1; delta_phi = phi_p - phi_q wrapped into [0, 2 pi).
struct TransversePair {
  double p = 0.0;
  double q = 0.0;
  double delta_phi = 0.0;

  /// Wraps the angle and rejects negative radii (ConfigError).
  static TransversePair make(double p, double q, double delta_phi);

  /// |p + q|^2
  [[nodiscard]] double sum_norm2() const noexcept;
  /// |p - q|^2
  [[nodiscard]] double diff_norm2() const noexcept;
};

/// Below this chirp the error-function form loses accuracy and the sinc form is used.
inline constexpr double kAlphaMin = 1e-12;
inline constexpr std::size_t kDefaultZSamples = 512;

/// sin(x)/x with sinc(0) = 1.
double sinc(double x) noexcept;

/// exp(-c |p+q|^2) with c from the configured waist convention.
double pump_factor(double sum_norm2, const CrystalPumpConfig& cfg) noexcept;

/// Longitudinal phase-matching integral
///   \int_{-L/2}^{L/2} dz exp[i (|p-q|^2 / 2k_p) z + i alpha (z + L/2) z]
/// by composite Gauss-Legendre with `z_samples` nodes (16-node panels).
Complex longitudinal_quadrature(double diff_norm2, const CrystalPumpConfig& cfg, std::size_t z_samples);

/// The same integral in closed form through the Faddeeva function. Requires alpha > alpha_min.
/// The error-function differences are rewritten as endpoint terms exp(i phi) w(|x| e^{i pi/4})
/// plus a stationary-phase term, which keeps every exponent bounded by alpha L^2.
Complex longitudinal_closed_form(double diff_norm2, const CrystalPumpConfig& cfg, double alpha_min = kAlphaMin);

/// Pump factor times the quadrature integral, evaluated with z_samples and 2*z_samples nodes.
/// Throws ConvergenceError if the two differ by more than 1e-8 relative; returns the finer value.
/// Requires z_samples >= 64.
Complex amplitude_quadrature(const TransversePair& tp, const CrystalPumpConfig& cfg, std::size_t z_samples);

/// amplitude_quadrature starting at kDefaultZSamples and doubling until the self-check passes.
Complex amplitude_quadrature_adaptive(const TransversePair& tp, const CrystalPumpConfig& cfg);

/// Pump factor times the closed-form integral. Throws ConfigError if alpha <= alpha_min.
Complex amplitude_closed_form(const TransversePair& tp, const CrystalPumpConfig& cfg, double alpha_min = kAlphaMin);

/// exp(-c |p+q|^2) sinc(L |p-q|^2 / 4k_p); the alpha = 0 amplitude divided by L.
Complex amplitude_unchirped(const TransversePair& tp, const CrystalPumpConfig& cfg);

/// Production evaluator: closed form above alpha_min, L * sinc below.
/// Both branches share the normalization of longitudinal_quadrature.
class JointAmplitude {
public:
  explicit JointAmplitude(const CrystalPumpConfig& cfg, double alpha_min = kAlphaMin);

  [[nodiscard]] double pump(double sum_norm2) const noexcept;
  [[nodiscard]] Complex longitudinal(double diff_norm2) const;
  [[nodiscard]] Complex operator()(const TransversePair& tp) const;

  [[nodiscard]] const CrystalPumpConfig& config() const noexcept { return cfg_; }
  [[nodiscard]] bool chirped() const noexcept { return chirped_; }

private:
  CrystalPumpConfig cfg_;
  double alpha_min_;
  bool chirped_;
};

}  // namespace spatent
