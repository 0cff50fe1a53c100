#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "spatent/config_file.hpp"
#include "spatent/errors.hpp"

using namespace spatent;

namespace {

bool message_contains(const std::string& text, const std::string& needle)
{
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("empty input gives the defaults")
{
  const auto req = parse_config("");
  CHECK(req.cfg.length() == 20000.0);
  CHECK(req.cfg.waist() == 100.0);
  CHECK(req.cfg.alpha() == 0.0);
  CHECK(req.cfg.convention() == WaistConvention::rms);
  CHECK_FALSE(req.grid.n_radial.has_value());
  CHECK(req.compute.convergence_gate);
  CHECK(req.outputs.spectrum);
  CHECK(req.outputs.kernel_heatmap);
}

TEST_CASE("keys, comments and whitespace")
{
  const auto req = parse_config(R"(# chirped crystal
crystal.length_um = 10000   # 1 cm
pump.waist_um=50
pump.waist_convention = field
grating.alpha_per_um2 = 2.5e-6

grid.n_radial = 128
gate.enabled = false
output.files = spectrum, report
)");
  CHECK(req.cfg.length() == 10000.0);
  CHECK(req.cfg.waist() == 50.0);
  CHECK(req.cfg.convention() == WaistConvention::field);
  CHECK(req.cfg.alpha() == 2.5e-6);
  CHECK(req.grid.n_radial == 128u);
  CHECK_FALSE(req.compute.convergence_gate);
  CHECK(req.outputs.spectrum);
  CHECK(req.outputs.report);
  CHECK_FALSE(req.outputs.spiral);
  CHECK_FALSE(req.outputs.kernel_heatmap);
}

TEST_CASE("grating periods set the chirp")
{
  const auto req = parse_config("crystal.length_um = 20000\ngrating.period_in_um = 3.0\ngrating.period_out_um = 3.1\n");
  REQUIRE(req.periods.has_value());
  CHECK(req.cfg.alpha() == doctest::Approx(chirp_from_periods({3.0, 3.1, 20000.0})));
  CHECK(req.cfg.alpha() > 0.0);
}

TEST_CASE("errors name the offending line")
{
  CHECK(message_contains("crystal.length_um = 1\nfoo = 2\n", "line 2"));
  CHECK(message_contains("crystal.length_um = 1\ncrystal.length_um = 2\n", "duplicate"));
  CHECK(message_contains("pump.waist_um 100\n", "line 1"));
  CHECK(message_contains("pump.waist_um = abc\n", "pump.waist_um"));
  CHECK(message_contains("pump.waist_um = 100x\n", "pump.waist_um"));
  CHECK(message_contains("gate.enabled = yes\n", "gate.enabled"));
  CHECK(message_contains("output.files = spectrum, movie\n", "movie"));
  CHECK(message_contains("pump.waist_convention = gaussian\n", "waist_convention"));
}

TEST_CASE("invalid values are rejected")
{
  CHECK_THROWS_AS(parse_config("crystal.length_um = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("pump.waist_um = -5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grating.alpha_per_um2 = -1e-6\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grating.alpha_per_um2 = 1e-6\ngrating.period_in_um = 3\ngrating.period_out_um = 3.1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("grating.period_in_um = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid.n_radial = 100\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid.n_phi = 3000\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid.n_radial = -8\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("truncation.eps_mode = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("gate.max_refinements = 9\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("compute.pump_cut = 5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("correlated_area.q_per_um = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("output.heatmap_floor = 1\n"), ConfigError);
}

TEST_CASE("formatted config parses back to the same request")
{
  const auto req = parse_config(R"(crystal.length_um = 12345.678
pump.waist_um = 77.7
grating.alpha_per_um2 = 3.3e-6
truncation.eps_tail = 1e-8
gate.max_refinements = 2
correlated_area.q_per_um = 0.05
output.files = spiral
)");
  const auto text = format_config(req);
  const auto back = parse_config(text);
  CHECK(back.cfg.length() == req.cfg.length());
  CHECK(back.cfg.waist() == req.cfg.waist());
  CHECK(back.cfg.alpha() == req.cfg.alpha());
  CHECK(back.grid.eps_tail == req.grid.eps_tail);
  CHECK(back.compute.max_refinements == 2);
  CHECK(back.compute.conditioning_q == req.compute.conditioning_q);
  CHECK_FALSE(back.outputs.spectrum);
  CHECK(back.outputs.spiral);
  CHECK(format_config(back) == text);
  // Grid defaults are materialized.
  CHECK(back.grid.n_radial.has_value());
  CHECK(back.grid.n_phi.has_value());
}

TEST_CASE("format_double keeps every bit")
{
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, -0.0}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("missing file is an I/O error")
{
  CHECK_THROWS_AS(load_config(std::filesystem::path("/nonexistent/spatent.cfg")), IoError);
}
