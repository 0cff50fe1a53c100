#include "spatent/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>
#include <unistd.h>

#include "parallel.hpp"
#include "spatent/errors.hpp"
#include "spatent/gaussian_estimate.hpp"

namespace spatent {
namespace {

using nlohmann::ordered_json;

ordered_json grid_json(const ResolvedGrid& g)
{
  return {{"p_max_per_um", g.p_max}, {"n_radial", g.n_radial}, {"n_phi", g.n_phi}};
}

ExitCode status_of(const EntanglementReport& report)
{
  return report.converged() ? ExitCode::ok : ExitCode::convergence;
}

std::string point_dir_name(std::size_t idx)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "point_%03zu", idx);
  return buf;
}

}  // namespace

std::filesystem::path default_output_dir()
{
  if (const char* env = std::getenv("SPATENT_OUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return "spatent_out";
}

void write_atomic(const std::filesystem::path& path, std::string_view content)
{
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
  }
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open " + tmp.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::string spectrum_csv(const SchmidtSpectrum& spec)
{
  std::string out = "l,n,lambda\n";
  for (const auto& e : spec.entries) {
    out += std::to_string(e.l) + ',' + std::to_string(e.n) + ',' + format_double(e.lambda) + '\n';
  }
  return out;
}

std::string spiral_csv(const std::map<int, double>& spiral)
{
  std::string out = "l,P_l\n";
  for (const auto& [l, p] : spiral) {
    out += std::to_string(l) + ',' + format_double(p) + '\n';
  }
  return out;
}

std::string heatmap_csv(const SchmidtSpectrum& spec, double floor)
{
  double peak = 0.0;
  for (const auto& e : spec.entries) {
    peak = std::max(peak, e.lambda);
  }
  std::string out = "l,n,lambda\n";
  for (const auto& e : spec.entries) {
    if (e.lambda >= floor * peak) {
      out += std::to_string(e.l) + ',' + std::to_string(e.n) + ',' + format_double(e.lambda) + '\n';
    }
  }
  return out;
}

std::string report_json(const RunRequest& request, const EntanglementReport& report)
{
  ordered_json j;
  j["entropy_ebits"] = report.entropy;
  j["schmidt_number"] = report.schmidt_number;
  j["converged"] = report.converged();

  ordered_json spiral = ordered_json::array();
  for (const auto& [l, p] : report.spiral) {
    spiral.push_back({{"l", l}, {"P_l", p}});
  }
  j["spiral"] = spiral;

  if (report.corr_area) {
    const auto& a = *report.corr_area;
    j["correlated_area"] = {{"width_definition", "FWHM"},
                            {"radial_width_per_um", a.radial_width},
                            {"azimuthal_width_rad", a.azimuthal_width},
                            {"q_fixed_per_um", a.q},
                            {"phi_q_rad", a.phi_q},
                            {"peak_p_per_um", a.peak_p},
                            {"peak_phi_rad", a.peak_phi}};
  } else {
    j["correlated_area"] = {{"width_definition", "FWHM"}, {"error", report.corr_area_error}};
  }

  const auto& s = report.spectrum;
  const auto& d = report.diagnostics;
  j["truncation"] = {{"l_max", s.l_max},
                     {"eps_mode", s.eps_mode},
                     {"eps_tail", s.eps_tail},
                     {"tail_mass", s.tail_mass},
                     {"spiral_decayed", s.spiral_decayed},
                     {"modes", s.entries.size()}};
  j["diagnostics"] = {{"grid", grid_json(d.grid)},
                      {"bandwidth", d.bandwidth},
                      {"radial_pairs", d.n_pairs},
                      {"angular_samples", d.n_samples},
                      {"alias_ratio", d.alias_ratio},
                      {"marginal_tail_fraction", d.marginal_tail_fraction},
                      {"tail_mass_ok", d.tail_ok}};

  ordered_json steps = ordered_json::array();
  for (const auto& st : report.convergence.steps) {
    steps.push_back({{"grid", grid_json(st.grid)}, {"entropy_ebits", st.entropy}, {"schmidt_number", st.schmidt_number}});
  }
  j["convergence"] = {{"attempted", report.convergence.attempted},
                      {"passed", report.convergence.passed},
                      {"tolerance", request.compute.gate_tolerance},
                      {"rel_change_entropy", report.convergence.rel_change_entropy},
                      {"rel_change_schmidt_number", report.convergence.rel_change_schmidt},
                      {"steps", steps}};

  if (report.config.alpha() == 0.0) {
    const auto cal = default_sinc_gamma(report.config);
    j["gaussian_estimate"] = {{"sinc_model", "sinc(x) ~ exp(-gamma x)"},
                              {"gamma", cal.gamma},
                              {"calibration_target_ebits", cal.target_entropy},
                              {"calibration_length_um", cal.reference_length_um},
                              {"entropy_ebits", gaussian_approx_entropy(report.config, cal.gamma)}};
  }

  const auto& c = report.config;
  ordered_json cfg = {{"crystal.length_um", c.length()},
                      {"crystal.n_e", c.n_e()},
                      {"pump.wavelength_um", c.lambda_p()},
                      {"pump.waist_um", c.waist()},
                      {"pump.waist_convention", to_string(c.convention())},
                      {"grating.alpha_per_um2", c.alpha()},
                      {"k_p_per_um", c.k_p()},
                      {"pump_exponent_um2", c.pump_exponent()},
                      {"rayleigh_range_um", c.rayleigh_range()}};
  if (request.periods) {
    cfg["grating.period_in_um"] = request.periods->in_um;
    cfg["grating.period_out_um"] = request.periods->out_um;
  }
  j["config"] = cfg;
  j["config_text"] = format_config(request);
  return j.dump(2) + '\n';
}

RunOutcome run_single(const RunRequest& request, const std::filesystem::path& out_dir, std::size_t workers)
{
  ComputeOptions options = request.compute;
  options.workers = workers;
  RunOutcome out{analyze(request.cfg, request.grid, options), {}, ExitCode::ok};
  out.status = status_of(out.report);

  auto emit = [&](const char* name, const std::string& content) {
    const auto path = out_dir / name;
    write_atomic(path, content);
    out.files.push_back(path);
  };
  if (request.outputs.spectrum) {
    emit("spectrum.csv", spectrum_csv(out.report.spectrum));
  }
  if (request.outputs.spiral) {
    emit("spiral.csv", spiral_csv(out.report.spiral));
  }
  if (request.outputs.kernel_heatmap) {
    emit("kernel_heatmap.csv", heatmap_csv(out.report.spectrum, request.heatmap_floor));
  }
  if (request.outputs.report) {
    emit("report.json", report_json(request, out.report));
  }
  return out;
}

std::optional<SweepAxis> sweep_axis_from_string(std::string_view s)
{
  if (s == "alpha") {
    return SweepAxis::alpha;
  }
  if (s == "w0") {
    return SweepAxis::w0;
  }
  if (s == "L") {
    return SweepAxis::length;
  }
  return std::nullopt;
}

const char* to_string(SweepAxis axis) noexcept
{
  switch (axis) {
    case SweepAxis::alpha:
      return "alpha";
    case SweepAxis::w0:
      return "w0";
    case SweepAxis::length:
      return "L";
  }
  return "?";
}

RunRequest sweep_point(const SweepRequest& sweep, double value)
{
  RunRequest req = sweep.base;
  switch (sweep.axis) {
    case SweepAxis::alpha:
      req.cfg = req.cfg.with_alpha(value);
      req.periods.reset();
      break;
    case SweepAxis::w0:
      req.cfg = req.cfg.with_waist(value);
      break;
    case SweepAxis::length:
      if (req.periods) {
        throw ConfigError("an L sweep needs grating.alpha_per_um2, not grating periods");
      }
      req.cfg = req.cfg.with_length(value);
      break;
  }
  return req;
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
  std::string out = "axis_value,E_ebits,K,P0,l_max,converged\n";
  for (const auto& row : rows) {
    out += format_double(row.axis_value) + ',';
    if (row.report) {
      const auto& r = *row.report;
      const auto p0 = r.spiral.find(0);
      out += format_double(r.entropy) + ',' + format_double(r.schmidt_number) + ','
             + format_double(p0 == r.spiral.end() ? 0.0 : p0->second) + ',' + std::to_string(r.spectrum.l_max) + ','
             + (r.converged() ? "true" : "false") + '\n';
    } else {
      out += "nan,nan,nan,0,failed\n";
    }
  }
  return out;
}

SweepOutcome run_sweep(const SweepRequest& sweep, const std::filesystem::path& out_dir)
{
  if (sweep.values.empty()) {
    throw ConfigError("sweep needs at least one value");
  }
  for (std::size_t i = 1; i < sweep.values.size(); ++i) {
    if (!(sweep.values[i] > sweep.values[i - 1])) {
      throw ConfigError("sweep values must be strictly increasing");
    }
  }

  // Points run in parallel when there are enough of them; otherwise each point
  // gets the workers for its sectors. Results do not depend on the split.
  const std::size_t n = sweep.values.size();
  const std::size_t outer = std::min(sweep.workers, n);
  const std::size_t inner = outer > 1 ? 1 : sweep.workers;

  SweepOutcome out;
  out.rows.resize(n);
  detail::parallel_for(n, outer, [&](std::size_t i) {
    auto& row = out.rows[i];
    row.axis_value = sweep.values[i];
    try {
      const RunRequest req = sweep_point(sweep, sweep.values[i]);
      auto result = run_single(req, out_dir / point_dir_name(i), inner);
      row.status = result.status;
      row.report = std::move(result.report);
    } catch (const ConfigError& e) {
      row.error = e.what();
      row.status = ExitCode::config;
    } catch (const ConvergenceError& e) {
      row.error = e.what();
      row.status = ExitCode::convergence;
    } catch (const IoError& e) {
      row.error = e.what();
      row.status = ExitCode::io;
    }
  });

  for (const auto& row : out.rows) {
    if (row.status != ExitCode::ok && out.status == ExitCode::ok) {
      out.status = row.status;
    }
  }
  out.table = out_dir / "sweep.csv";
  write_atomic(out.table, sweep_csv(out.rows));
  return out;
}

}  // namespace spatent
