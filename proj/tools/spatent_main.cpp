// Command line front end: run, sweep and validate.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spatent/config_file.hpp"
#include "spatent/errors.hpp"
#include "spatent/runner.hpp"

namespace {

using spatent::ExitCode;

int code(ExitCode c)
{
  return static_cast<int>(c);
}

std::vector<double> parse_values(const std::string& list)
{
  std::vector<double> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw spatent::ConfigError("--values: cannot parse '" + item + "'");
    }
    if (used != item.size()) {
      throw spatent::ConfigError("--values: cannot parse '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

void print_summary(const spatent::EntanglementReport& r)
{
  std::printf("E = %s ebits\nK = %s\nl_max = %d\nconverged = %s\n", spatent::format_double(r.entropy).c_str(),
              spatent::format_double(r.schmidt_number).c_str(), r.spectrum.l_max, r.converged() ? "true" : "false");
  if (!r.diagnostics.tail_ok) {
    std::printf("note: marginal tail fraction %s exceeds 1e-6\n",
                spatent::format_double(r.diagnostics.marginal_tail_fraction).c_str());
  }
}

int validate(const std::string& config_path)
{
  const auto req = spatent::load_config(config_path);
  std::cout << spatent::format_config(req);
  std::printf("# ok: k_p = %s rad/um, Rayleigh range = %s um\n", spatent::format_double(req.cfg.k_p()).c_str(),
              spatent::format_double(req.cfg.rayleigh_range()).c_str());
  return code(ExitCode::ok);
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Spatial entanglement of photon pairs from chirped quasi-phase-matched crystals"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  std::size_t workers = 1;

  auto* run = app.add_subcommand("run", "Analyze one configuration");
  run->add_option("--config", config, "Configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (default: $SPATENT_OUT_DIR or ./spatent_out)");
  run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  std::string axis;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "Analyze a one-parameter family of configurations");
  sweep->add_option("--config", config, "Base configuration file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--axis", axis, "Swept parameter")->required()->check(CLI::IsMember({"alpha", "w0", "L"}));
  sweep->add_option("--values", values, "Comma separated, strictly increasing values")->required();
  sweep->add_option("--out", out_dir, "Output directory (default: $SPATENT_OUT_DIR or ./spatent_out)");
  sweep->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("validate", "Parse a configuration and check the grid without computing");
  check->add_option("--config", config, "Configuration file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::config);
  }

  const std::filesystem::path out = out_dir.empty() ? spatent::default_output_dir() : std::filesystem::path(out_dir);
  try {
    if (*check) {
      return validate(config);
    }
    if (*run) {
      const auto req = spatent::load_config(config);
      const auto result = spatent::run_single(req, out, workers);
      print_summary(result.report);
      for (const auto& f : result.files) {
        std::printf("wrote %s\n", f.string().c_str());
      }
      return code(result.status);
    }
    spatent::SweepRequest req;
    req.base = spatent::load_config(config);
    req.axis = *spatent::sweep_axis_from_string(axis);
    req.values = parse_values(values);
    req.workers = workers;
    const auto result = spatent::run_sweep(req, out);
    for (const auto& row : result.rows) {
      if (row.report) {
        std::printf("%s = %s: E = %s K = %s%s\n", axis.c_str(), spatent::format_double(row.axis_value).c_str(),
                    spatent::format_double(row.report->entropy).c_str(),
                    spatent::format_double(row.report->schmidt_number).c_str(),
                    row.report->converged() ? "" : " (unconverged)");
      } else {
        std::fprintf(stderr, "%s = %s: failed: %s\n", axis.c_str(), spatent::format_double(row.axis_value).c_str(),
                     row.error.c_str());
      }
    }
    std::printf("wrote %s\n", result.table.string().c_str());
    return code(result.status);
  } catch (const spatent::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return code(ExitCode::config);
  } catch (const spatent::ConvergenceError& e) {
    std::fprintf(stderr, "convergence failure: %s\n", e.what());
    return code(ExitCode::convergence);
  } catch (const spatent::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return code(ExitCode::io);
  }
}
