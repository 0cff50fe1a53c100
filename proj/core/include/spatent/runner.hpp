#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spatent/analysis.hpp"
#include "spatent/config_file.hpp"

namespace spatent {

/// Process exit status.
enum class ExitCode : int {
  ok = 0,
  config = 2,
  convergence = 3,
  io = 4,
};

/// Directory named by SPATENT_OUT_DIR, else "spatent_out".
std::filesystem::path default_output_dir();

/// Writes through a temporary file in the same directory and renames it into
/// place. Throws IoError.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string spectrum_csv(const SchmidtSpectrum& spec);
std::string spiral_csv(const std::map<int, double>& spiral);
std::string heatmap_csv(const SchmidtSpectrum& spec, double floor);
std::string report_json(const RunRequest& request, const EntanglementReport& report);

struct RunOutcome {
  EntanglementReport report;
  std::vector<std::filesystem::path> files;
  ExitCode status = ExitCode::ok;
};

/// Analyzes one request and writes the selected outputs into out_dir.
/// status is convergence when the gate failed; the files are written anyway.
RunOutcome run_single(const RunRequest& request, const std::filesystem::path& out_dir, std::size_t workers = 1);

enum class SweepAxis {
  alpha,
  w0,
  length,
};

std::optional<SweepAxis> sweep_axis_from_string(std::string_view s);
const char* to_string(SweepAxis axis) noexcept;

struct SweepRequest {
  RunRequest base;
  SweepAxis axis = SweepAxis::alpha;
  std::vector<double> values;
  std::size_t workers = 1;
};

struct SweepRow {
  double axis_value = 0.0;
  std::optional<EntanglementReport> report;
  std::string error;
  ExitCode status = ExitCode::ok;
};

struct SweepOutcome {
  std::vector<SweepRow> rows;
  std::filesystem::path table;
  ExitCode status = ExitCode::ok;
};

/// The base request with the swept parameter replaced (ConfigError if invalid).
RunRequest sweep_point(const SweepRequest& sweep, double value);

/// One run per value, each into out_dir/point_NNN, plus out_dir/sweep.csv with
/// rows in the order of `values`. A failing point is recorded and the sweep
/// continues. Values must be non-empty and strictly increasing (ConfigError).
SweepOutcome run_sweep(const SweepRequest& sweep, const std::filesystem::path& out_dir);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace spatent
