#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "spatent/analysis.hpp"
#include "spatent/crystal.hpp"

namespace spatent {

/// Which files a run writes.
struct OutputSet {
  bool spectrum = true;
  bool spiral = true;
  bool report = true;
  bool kernel_heatmap = true;
};

/// Entrance and exit periods when the chirp is given through the grating.
struct GratingPeriods {
  double in_um = 0.0;
  double out_um = 0.0;
};

/// One fully specified computation.
struct RunRequest {
  CrystalPumpConfig cfg = CrystalPumpConfig::make({});
  std::optional<GratingPeriods> periods;
  GridSettings grid;
  ComputeOptions compute;
  OutputSet outputs;
  /// Heatmap rows keep lambda >= floor * max lambda.
  double heatmap_floor = 1e-4;
};

/// Parses line-oriented `key = value` text. '#' starts a comment.
/// Throws ConfigError naming the line on unknown, duplicate, malformed or
/// conflicting keys and on invalid physics.
///
/// Keys (units in the suffix):
///   crystal.length_um  crystal.n_e  pump.wavelength_um  pump.waist_um
///   pump.waist_convention (field | rms)
///   grating.alpha_per_um2  |  grating.period_in_um + grating.period_out_um
///   grid.p_max_per_um  grid.n_radial  grid.n_phi
///   truncation.eps_mode  truncation.eps_tail
///   gate.enabled  gate.max_refinements  gate.tolerance
///   compute.memory_budget_mb  compute.pump_cut
///   correlated_area.enabled  correlated_area.q_per_um  correlated_area.phi_q_rad
///   output.files (comma list of spectrum, spiral, report, kernel_heatmap)
///   output.heatmap_floor
RunRequest parse_config(std::string_view text);

/// Reads and parses a file. IoError if it cannot be read.
RunRequest load_config(const std::filesystem::path& path);

/// Every key with its effective value, grid defaults materialized, in the
/// format parse_config reads. Numbers carry 17 significant digits.
std::string format_config(const RunRequest& request);

/// printf("%.17g")
std::string format_double(double v);

}  // namespace spatent
