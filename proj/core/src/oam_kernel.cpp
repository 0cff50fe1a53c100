#include "spatent/oam_kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "spatent/amplitude.hpp"
#include "spatent/errors.hpp"

namespace spatent {
namespace {

void check_n_phi(int l, std::size_t n_phi)
{
  if (!std::has_single_bit(n_phi) || n_phi < 4 * (static_cast<std::size_t>(std::abs(l)) + 1)) {
    throw ConfigError("n_phi must be a power of two of at least 4 (|l| + 1), got " + std::to_string(n_phi));
  }
}

// Fourier coefficients of the samples psi_k = psi(2 pi k / n) at the requested orders.
// Orders are non-negative; negative l are folded by the caller.
void fourier_coefficients(const std::vector<Complex>& samples, const std::vector<int>& orders, std::vector<Complex>& out)
{
  const std::size_t n = samples.size();
  out.assign(orders.size(), Complex{});
  for (std::size_t m = 0; m < orders.size(); ++m) {
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    Complex acc{};
    for (std::size_t k = 0; k < n; ++k) {
      const double arg = step * static_cast<double>((static_cast<std::size_t>(orders[m]) * k) % n);
      acc += samples[k] * Complex(std::cos(arg), std::sin(arg));
    }
    out[m] = acc / static_cast<double>(n);
  }
}

std::vector<Complex> sample_circle(double p, double q, const AngularAmplitude& psi, std::size_t n_phi)
{
  std::vector<Complex> samples(n_phi);
  for (std::size_t k = 0; k < n_phi; ++k) {
    samples[k] = psi(p, q, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_phi));
  }
  return samples;
}

AngularAmplitude spdc_amplitude(const CrystalPumpConfig& cfg)
{
  return [amp = JointAmplitude(cfg)](double p, double q, double dphi) {
    return amp(TransversePair::make(p, q, dphi));
  };
}

}  // namespace

Complex azimuthal_project(int l, double p, double q, const AngularAmplitude& psi, std::size_t n_phi)
{
  check_n_phi(l, n_phi);
  const auto samples = sample_circle(p, q, psi, n_phi);
  std::vector<Complex> coeffs;
  const int edge = static_cast<int>(n_phi / 2) - 1;
  fourier_coefficients(samples, {0, edge, (l % static_cast<int>(n_phi) + static_cast<int>(n_phi)) % static_cast<int>(n_phi)}, coeffs);
  if (std::abs(coeffs[1]) > 1e-10 * std::abs(coeffs[0])) {
    throw ConvergenceError("azimuthal sampling too coarse: |B_" + std::to_string(edge) + "| / |B_0| = "
                           + std::to_string(std::abs(coeffs[1]) / std::abs(coeffs[0])));
  }
  return coeffs[2];
}

Complex azimuthal_project(int l, double p, double q, const CrystalPumpConfig& cfg, std::size_t n_phi)
{
  return azimuthal_project(l, p, q, spdc_amplitude(cfg), n_phi);
}

std::vector<Complex> OamKernel::weighted() const
{
  const auto s = grid.measure_sqrt();
  const std::size_t n = grid.n_radial;
  std::vector<Complex> m(values.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i * n + j] = s[i] * values[i * n + j] * s[j];
    }
  }
  return m;
}

OamKernel build_kernel(int l, const RadialGrid& grid, const CrystalPumpConfig& cfg, std::size_t n_phi)
{
  return build_kernel(l, grid, spdc_amplitude(cfg), n_phi);
}

OamKernel build_kernel(int l, const RadialGrid& grid, const AngularAmplitude& psi, std::size_t n_phi)
{
  check_n_phi(l, n_phi);
  const std::size_t n = grid.n_radial;
  const int edge = static_cast<int>(n_phi / 2) - 1;
  const int order = (l % static_cast<int>(n_phi) + static_cast<int>(n_phi)) % static_cast<int>(n_phi);
  OamKernel kernel{l, grid, std::vector<Complex>(n * n)};
  double max_b0 = 0.0;
  double max_edge = 0.0;
  std::vector<Complex> coeffs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto samples = sample_circle(grid.rule.nodes[i], grid.rule.nodes[j], psi, n_phi);
      fourier_coefficients(samples, {0, edge, order}, coeffs);
      max_b0 = std::max(max_b0, std::abs(coeffs[0]));
      max_edge = std::max(max_edge, std::abs(coeffs[1]));
      kernel.values[i * n + j] = coeffs[2];
    }
  }
  if (max_edge > 1e-10 * max_b0) {
    throw ConvergenceError("azimuthal sampling too coarse for kernel: max|B_edge| / max|B_0| = "
                           + std::to_string(max_edge / max_b0));
  }
  return kernel;
}

OamKernel build_kernel(int l, const RadialGrid& grid, const RadialKernel& radial)
{
  const std::size_t n = grid.n_radial;
  OamKernel kernel{l, grid, std::vector<Complex>(n * n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      kernel.values[i * n + j] = radial(grid.rule.nodes[i], grid.rule.nodes[j]);
    }
  }
  return kernel;
}

}  // namespace spatent
