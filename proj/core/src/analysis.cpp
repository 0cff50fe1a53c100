#include "spatent/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "sector_engine.hpp"
#include "spatent/amplitude.hpp"
#include "spatent/errors.hpp"
#include "spatent/radial_grid.hpp"

namespace spatent {
namespace {

constexpr double kAliasLimit = 1e-10;
constexpr double kTailLimit = 1e-6;
constexpr int kFirstBlock = 8;

AngularAmplitude make_amplitude(const CrystalPumpConfig& cfg, AmplitudeModel model)
{
  if (model == AmplitudeModel::quadrature) {
    return [cfg](double p, double q, double dphi) {
      return amplitude_quadrature_adaptive(TransversePair::make(p, q, dphi), cfg);
    };
  }
  return [amp = JointAmplitude(cfg)](double p, double q, double dphi) {
    const TransversePair tp{p, q, dphi};
    return amp(tp);
  };
}

double relative_change(double coarse, double fine)
{
  const double scale = std::max(std::abs(fine), 1e-3);
  return std::abs(fine - coarse) / scale;
}

}  // namespace

ResolvedGrid resolve_grid(const CrystalPumpConfig& cfg, const GridSettings& settings)
{
  ResolvedGrid g;
  g.p_max = settings.p_max.value_or(default_p_max(cfg));
  g.n_radial = settings.n_radial.value_or(default_n_radial(cfg, g.p_max));
  g.n_phi = settings.n_phi.value_or(default_n_phi(cfg, g.p_max));
  if (!(g.p_max > 0.0) || !std::isfinite(g.p_max)) {
    throw ConfigError("p_max must be positive");
  }
  if (g.n_radial == 0 || g.n_radial % 8 != 0) {
    throw ConfigError("n_radial must be a positive multiple of 8, got " + std::to_string(g.n_radial));
  }
  if (!std::has_single_bit(g.n_phi) || g.n_phi < 16) {
    throw ConfigError("n_phi must be a power of two of at least 16, got " + std::to_string(g.n_phi));
  }
  if (!(settings.eps_mode > 0.0 && settings.eps_mode < 1.0) || !(settings.eps_tail > 0.0 && settings.eps_tail < 1.0)) {
    throw ConfigError("eps_mode and eps_tail must lie in (0, 1)");
  }
  return g;
}

SpectrumResult compute_spectrum(const CrystalPumpConfig& cfg, const ResolvedGrid& grid, const GridSettings& settings,
                                const ComputeOptions& options)
{
  const RadialGrid radial = RadialGrid::make(grid.p_max, grid.n_radial);
  const detail::SectorEngine engine(cfg.pump_exponent(), make_amplitude(cfg, options.model), radial, grid.n_phi,
                                    {options.workers, options.pump_cut});

  SpectrumResult out;
  auto& diag = out.diagnostics;
  diag.grid = grid;
  diag.bandwidth = engine.bandwidth();
  diag.n_pairs = engine.n_pairs();
  diag.n_samples = engine.n_samples();
  diag.alias_ratio = engine.alias_ratio();
  if (diag.alias_ratio > kAliasLimit) {
    throw ConvergenceError("azimuthal sampling too coarse: n_phi = " + std::to_string(grid.n_phi)
                           + " leaves |B_edge| / |B_0| = " + std::to_string(diag.alias_ratio));
  }

  const int l_limit = static_cast<int>(grid.n_phi / 2) - 1;
  const std::size_t per_sector = engine.band_size() * sizeof(Complex);
  const int max_block = static_cast<int>(std::max<std::size_t>(1, options.memory_budget_bytes / std::max<std::size_t>(per_sector, 1)));

  std::map<int, std::vector<double>> per_l;
  std::vector<double> marginal(grid.n_radial, 0.0);
  std::vector<double> sector_totals;
  double running_total = 0.0;
  int quiet = 0;
  int l = 0;
  int block = kFirstBlock;
  bool done = false;
  while (!done) {
    if (l > l_limit) {
      throw ConvergenceError("spiral spectrum has not decayed by l = " + std::to_string(l_limit)
                             + "; increase n_phi or p_max");
    }
    const int count = std::min({block, max_block, l_limit - l + 1});
    const auto bands = engine.project(l, count);
    std::vector<detail::SectorEngine::Sector> sectors(static_cast<std::size_t>(count));
    detail::parallel_for(sectors.size(), options.workers,
                         [&](std::size_t c) { sectors[c] = engine.solve(bands[c]); });
    for (int c = 0; c < count && !done; ++c) {
      auto& sector = sectors[static_cast<std::size_t>(c)];
      const int lc = l + c;
      const double mult = lc == 0 ? 1.0 : 2.0;
      const double p_l = sorted_sum(sector.lambdas);
      running_total += mult * p_l;
      for (std::size_t i = 0; i < marginal.size(); ++i) {
        marginal[i] += mult * sector.row_mass[i];
      }
      quiet = p_l < settings.eps_tail * running_total ? quiet + 1 : 0;
      if (lc > 0) {
        per_l[-lc] = sector.lambdas;
      }
      per_l[lc] = std::move(sector.lambdas);
      done = quiet >= 3;
    }
    l += count;
    block *= 2;
  }

  out.spectrum = assemble_spectrum(per_l, settings.eps_tail, settings.eps_mode);
  out.entropy = entropy(out.spectrum);
  out.schmidt_number = schmidt_number(out.spectrum);

  std::vector<double> tail;
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    if (radial.rule.nodes[i] >= 0.9 * grid.p_max) {
      tail.push_back(marginal[i]);
    }
  }
  const double marginal_total = sorted_sum(marginal);
  diag.marginal_tail_fraction = marginal_total > 0.0 ? sorted_sum(tail) / marginal_total : 0.0;
  diag.tail_ok = diag.marginal_tail_fraction < kTailLimit;
  return out;
}

EntanglementReport analyze(const CrystalPumpConfig& cfg, const GridSettings& settings, const ComputeOptions& options)
{
  ResolvedGrid grid = resolve_grid(cfg, settings);
  SpectrumResult result = compute_spectrum(cfg, grid, settings, options);

  EntanglementReport report{cfg, settings, {}, 0.0, 1.0, {}, std::nullopt, {}, {}, {}};
  auto& gate = report.convergence;
  gate.steps.push_back({grid, result.entropy, result.schmidt_number});
  if (options.convergence_gate) {
    gate.attempted = true;
    for (int r = 0; r < options.max_refinements && !gate.passed; ++r) {
      grid = grid.doubled();
      SpectrumResult finer = compute_spectrum(cfg, grid, settings, options);
      gate.steps.push_back({grid, finer.entropy, finer.schmidt_number});
      gate.rel_change_entropy = relative_change(result.entropy, finer.entropy);
      gate.rel_change_schmidt = relative_change(result.schmidt_number, finer.schmidt_number);
      gate.passed = gate.rel_change_entropy < options.gate_tolerance && gate.rel_change_schmidt < options.gate_tolerance;
      result = std::move(finer);
    }
  }

  report.spectrum = std::move(result.spectrum);
  report.entropy = result.entropy;
  report.schmidt_number = result.schmidt_number;
  report.spiral = spiral_spectrum(report.spectrum);
  report.diagnostics = result.diagnostics;
  if (options.correlated_area) {
    try {
      report.corr_area = correlated_area(cfg, options.conditioning_q.value_or(default_conditioning_radius(cfg)),
                                         options.conditioning_phi);
    } catch (const ConvergenceError& e) {
      report.corr_area_error = e.what();
    }
  }
  return report;
}

}  // namespace spatent
