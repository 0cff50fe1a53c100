#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spatent/correlated_area.hpp"
#include "spatent/crystal.hpp"
#include "spatent/schmidt.hpp"

namespace spatent {

/// Optional grid overrides plus truncation thresholds. Unset fields take the
/// defaults of default_p_max / default_n_radial / default_n_phi.
struct GridSettings {
  std::optional<double> p_max;
  std::optional<std::size_t> n_radial;
  std::optional<std::size_t> n_phi;
  double eps_mode = kDefaultEpsMode;
  double eps_tail = kDefaultEpsTail;
};

struct ResolvedGrid {
  double p_max = 0.0;
  std::size_t n_radial = 0;
  std::size_t n_phi = 0;

  [[nodiscard]] ResolvedGrid doubled() const { return {p_max, 2 * n_radial, 2 * n_phi}; }
};

/// Materializes defaults and validates the grid (ConfigError).
ResolvedGrid resolve_grid(const CrystalPumpConfig& cfg, const GridSettings& settings);

/// Which evaluator supplies the amplitude samples.
enum class AmplitudeModel {
  closed_form,
  quadrature,
};

struct ComputeOptions {
  std::size_t workers = 1;
  /// Double n_radial and n_phi and require E and K to move by less than gate_tolerance.
  bool convergence_gate = true;
  int max_refinements = 1;
  double gate_tolerance = 0.005;
  AmplitudeModel model = AmplitudeModel::closed_form;
  /// Pump exponents above this are treated as zero amplitude.
  double pump_cut = 40.0;
  /// Upper bound on the memory held by sector matrices at once.
  std::size_t memory_budget_bytes = std::size_t{256} << 20;
  /// Conditioning point of the correlated-area widths; radius defaults to
  /// default_conditioning_radius.
  bool correlated_area = true;
  std::optional<double> conditioning_q;
  double conditioning_phi = 0.0;
};

struct SpectrumDiagnostics {
  ResolvedGrid grid;
  std::size_t bandwidth = 0;
  std::size_t n_pairs = 0;
  std::size_t n_samples = 0;
  double alias_ratio = 0.0;
  /// Fraction of the marginal intensity with p in [0.9 p_max, p_max].
  double marginal_tail_fraction = 0.0;
  /// marginal_tail_fraction < 1e-6
  bool tail_ok = false;
};

struct SpectrumResult {
  SchmidtSpectrum spectrum;
  double entropy = 0.0;
  double schmidt_number = 1.0;
  SpectrumDiagnostics diagnostics;
};

/// Schmidt spectrum of cfg on one grid. Sectors l = 0, 1, ... are added until
/// three consecutive P_l fall below eps_tail of the running total; l and -l
/// share one kernel. Throws ConvergenceError on angular aliasing or when the
/// spiral spectrum has not decayed by l = n_phi/2 - 1.
SpectrumResult compute_spectrum(const CrystalPumpConfig& cfg, const ResolvedGrid& grid, const GridSettings& settings,
                                const ComputeOptions& options);

struct GateStep {
  ResolvedGrid grid;
  double entropy = 0.0;
  double schmidt_number = 0.0;
};

struct ConvergenceRecord {
  bool attempted = false;
  bool passed = false;
  std::vector<GateStep> steps;
  double rel_change_entropy = 0.0;
  double rel_change_schmidt = 0.0;
};

struct EntanglementReport {
  CrystalPumpConfig config;
  GridSettings settings;
  SchmidtSpectrum spectrum;
  double entropy = 0.0;
  double schmidt_number = 1.0;
  std::map<int, double> spiral;
  std::optional<CorrelatedArea> corr_area;
  /// Set when the correlated-area search failed.
  std::string corr_area_error;
  SpectrumDiagnostics diagnostics;
  ConvergenceRecord convergence;

  /// Gate passed, or gate disabled.
  [[nodiscard]] bool converged() const noexcept { return !convergence.attempted || convergence.passed; }
};

/// Spectrum, metrics and gate. The reported numbers come from the finest grid evaluated.
EntanglementReport analyze(const CrystalPumpConfig& cfg, const GridSettings& settings, const ComputeOptions& options);

}  // namespace spatent
