#include "spatent/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spatent/amplitude.hpp"
#include "spatent/errors.hpp"

namespace spatent {

RadialGrid RadialGrid::make(double p_max, std::size_t n_radial, std::size_t panel_order)
{
  if (!(p_max > 0.0) || !std::isfinite(p_max)) {
    throw ConfigError("radial cutoff p_max must be positive");
  }
  if (panel_order == 0 || n_radial == 0 || n_radial % panel_order != 0) {
    throw ConfigError("n_radial must be a positive multiple of " + std::to_string(panel_order));
  }
  RadialGrid grid;
  grid.rule = composite_gauss_legendre(n_radial / panel_order, panel_order, 0.0, p_max);
  grid.p_max = p_max;
  grid.n_radial = n_radial;
  return grid;
}

std::vector<double> RadialGrid::measure_sqrt() const
{
  std::vector<double> s(n_radial);
  for (std::size_t i = 0; i < n_radial; ++i) {
    s[i] = std::sqrt(rule.weights[i] * rule.nodes[i]);
  }
  return s;
}

double default_p_max(const CrystalPumpConfig& cfg)
{
  const double kp = cfg.k_p();
  const double band = 0.5 * std::sqrt(2.0 * kp * cfg.alpha() * cfg.length());
  const double pump = 10.0 / cfg.waist();
  const double lobe = std::sqrt(4.0 * std::numbers::pi * kp / cfg.length());
  return 1.25 * (band + pump + lobe);
}

std::size_t default_n_radial(const CrystalPumpConfig& cfg, double p_max)
{
  const std::size_t base = cfg.alpha() <= 5e-6 ? 256 : 512;
  // Two nodes per pump width 1/sqrt(c) across [0, p_max].
  const auto pump = static_cast<std::size_t>(std::ceil(2.0 * p_max * std::sqrt(cfg.pump_exponent()) / 8.0)) * 8;
  return std::max(base, pump);
}

std::size_t default_n_phi(const CrystalPumpConfig& cfg, double p_max)
{
  const bool chirped = cfg.alpha() > kAlphaMin;
  std::size_t n = chirped ? 4096 : 256;
  const double spread = std::sqrt(2.0 * cfg.pump_exponent()) * p_max;
  const double needed = 4.0 * (7.0 * spread + 1.0);
  while (static_cast<double>(n) < needed) {
    n *= 2;
  }
  return n;
}

}  // namespace spatent
