#include "spatent/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spatent/errors.hpp"
#include "spatent/quadrature.hpp"

namespace spatent {
namespace {

constexpr std::size_t kPanelOrder = 16;
constexpr std::size_t kMaxZSamples = std::size_t{1} << 22;

const QuadratureRule& unit_panel()
{
  static const QuadratureRule rule = gauss_legendre(kPanelOrder, -1.0, 1.0);
  return rule;
}

Complex cis(double phase)
{
  return {std::cos(phase), std::sin(phase)};
}

}  // namespace

TransversePair TransversePair::make(double p, double q, double delta_phi)
{
  if (!(p >= 0.0) || !(q >= 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw ConfigError("transverse wavenumbers must be finite and non-negative");
  }
  if (!std::isfinite(delta_phi)) {
    throw ConfigError("azimuthal difference must be finite");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(delta_phi, two_pi);
  if (wrapped < 0.0) {
    wrapped += two_pi;
  }
  if (wrapped >= two_pi) {
    wrapped = 0.0;
  }
  return {p, q, wrapped};
}

double TransversePair::sum_norm2() const noexcept
{
  return std::max(0.0, p * p + q * q + 2.0 * p * q * std::cos(delta_phi));
}

double TransversePair::diff_norm2() const noexcept
{
  return std::max(0.0, p * p + q * q - 2.0 * p * q * std::cos(delta_phi));
}

double sinc(double x) noexcept
{
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double pump_factor(double sum_norm2, const CrystalPumpConfig& cfg) noexcept
{
  return std::exp(-cfg.pump_exponent() * sum_norm2);
}

Complex longitudinal_quadrature(double diff_norm2, const CrystalPumpConfig& cfg, std::size_t z_samples)
{
  const double length = cfg.length();
  const double alpha = cfg.alpha();
  const double mismatch = diff_norm2 / (2.0 * cfg.k_p());
  const std::size_t panels = std::max<std::size_t>(1, (z_samples + kPanelOrder - 1) / kPanelOrder);
  const QuadratureRule& base = unit_panel();
  const double width = length / static_cast<double>(panels);

  Complex total{0.0, 0.0};
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = -0.5 * length + width * (static_cast<double>(k) + 0.5);
    Complex panel{0.0, 0.0};
    for (std::size_t i = 0; i < kPanelOrder; ++i) {
      const double z = mid + 0.5 * width * base.nodes[i];
      const double phase = mismatch * z + alpha * (z + 0.5 * length) * z;
      panel += base.weights[i] * cis(phase);
    }
    total += 0.5 * width * panel;
  }
  return total;
}

Complex longitudinal_closed_form(double diff_norm2, const CrystalPumpConfig& cfg, double alpha_min)
{
  const double alpha = cfg.alpha();
  if (!(alpha > alpha_min)) {
    throw ConfigError("closed-form amplitude needs alpha above " + std::to_string(alpha_min)
                      + " um^-2; use the unchirped form");
  }
  const double length = cfg.length();
  const double mismatch = diff_norm2 / (2.0 * cfg.k_p());
  const double sqrt_alpha = std::sqrt(alpha);

  // Integration limits of the completed square, u = z + (mismatch + alpha L/2) / (2 alpha).
  const double shift = mismatch / (2.0 * alpha);
  const double x_hi = sqrt_alpha * (shift + 0.75 * length);
  const double x_lo = sqrt_alpha * (shift - 0.25 * length);
  const double s_hi = x_hi >= 0.0 ? 1.0 : -1.0;
  const double s_lo = x_lo >= 0.0 ? 1.0 : -1.0;

  // Phases left after combining exp(-i B) with exp(-z_k^2) at each limit.
  const double phase_hi = 0.5 * alpha * length * length + 0.5 * mismatch * length;
  const double phase_lo = -0.5 * mismatch * length;

  Complex bracket = -s_hi * cis(phase_hi) * faddeeva(std::abs(x_hi) * sqrt_i)
                    + s_lo * cis(phase_lo) * faddeeva(std::abs(x_lo) * sqrt_i);
  if (s_hi != s_lo) {
    const double b = mismatch + 0.5 * alpha * length;
    bracket += (s_hi - s_lo) * cis(-b * b / (4.0 * alpha));
  }
  const Complex prefactor = sqrt_i * std::sqrt(std::numbers::pi / (4.0 * alpha));
  return prefactor * bracket;
}

Complex amplitude_quadrature(const TransversePair& tp, const CrystalPumpConfig& cfg, std::size_t z_samples)
{
  if (z_samples < 64) {
    throw ConfigError("amplitude_quadrature needs at least 64 z samples");
  }
  const double diff2 = tp.diff_norm2();
  const Complex coarse = longitudinal_quadrature(diff2, cfg, z_samples);
  const Complex fine = longitudinal_quadrature(diff2, cfg, 2 * z_samples);
  // Floor keeps the test meaningful at exact zeros of the integral.
  const double scale = std::max(std::abs(fine), 1e-12 * cfg.length());
  if (std::abs(fine - coarse) > 1e-8 * scale) {
    throw ConvergenceError("z quadrature not converged at " + std::to_string(z_samples) + " samples");
  }
  return pump_factor(tp.sum_norm2(), cfg) * fine;
}

Complex amplitude_quadrature_adaptive(const TransversePair& tp, const CrystalPumpConfig& cfg)
{
  for (std::size_t n = kDefaultZSamples; n <= kMaxZSamples; n *= 2) {
    try {
      return amplitude_quadrature(tp, cfg, n);
    } catch (const ConvergenceError&) {
      // double and retry
    }
  }
  throw ConvergenceError("z quadrature not converged at the sample limit");
}

Complex amplitude_closed_form(const TransversePair& tp, const CrystalPumpConfig& cfg, double alpha_min)
{
  return pump_factor(tp.sum_norm2(), cfg) * longitudinal_closed_form(tp.diff_norm2(), cfg, alpha_min);
}

Complex amplitude_unchirped(const TransversePair& tp, const CrystalPumpConfig& cfg)
{
  const double arg = cfg.length() * tp.diff_norm2() / (4.0 * cfg.k_p());
  return {pump_factor(tp.sum_norm2(), cfg) * sinc(arg), 0.0};
}

JointAmplitude::JointAmplitude(const CrystalPumpConfig& cfg, double alpha_min)
    : cfg_(cfg), alpha_min_(alpha_min), chirped_(cfg.alpha() > alpha_min)
{
}

double JointAmplitude::pump(double sum_norm2) const noexcept
{
  return pump_factor(sum_norm2, cfg_);
}

Complex JointAmplitude::longitudinal(double diff_norm2) const
{
  if (chirped_) {
    return longitudinal_closed_form(diff_norm2, cfg_, alpha_min_);
  }
  const double length = cfg_.length();
  return {length * sinc(length * diff_norm2 / (4.0 * cfg_.k_p())), 0.0};
}

Complex JointAmplitude::operator()(const TransversePair& tp) const
{
  return pump(tp.sum_norm2()) * longitudinal(tp.diff_norm2());
}

}  // namespace spatent
