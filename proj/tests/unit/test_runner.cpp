#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "spatent/errors.hpp"
#include "spatent/runner.hpp"

using namespace spatent;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name)
{
  const auto dir = fs::temp_directory_path() / ("spatent_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunRequest small_request()
{
  return parse_config(R"(crystal.length_um = 5000
pump.waist_um = 30
grid.n_radial = 64
grid.n_phi = 1024
gate.enabled = false
)");
}

std::string first_line(const std::string& s)
{
  return s.substr(0, s.find('\n'));
}

}  // namespace

TEST_CASE("atomic write replaces the file and leaves no temporaries")
{
  const auto dir = scratch_dir("atomic");
  const auto path = dir / "sub" / "a.txt";
  write_atomic(path, "one");
  write_atomic(path, "two");
  CHECK(slurp(path) == "two");
  CHECK(std::distance(fs::directory_iterator(dir / "sub"), fs::directory_iterator{}) == 1);
  CHECK_THROWS_AS(write_atomic(path / "below_a_file", "x"), IoError);
}

TEST_CASE("run writes the documented files and schemas")
{
  const auto dir = scratch_dir("run");
  const auto out = run_single(small_request(), dir);
  CHECK(out.status == ExitCode::ok);
  CHECK(out.files.size() == 4);
  const auto spectrum = slurp(dir / "spectrum.csv");
  const auto spiral = slurp(dir / "spiral.csv");
  const auto heatmap = slurp(dir / "kernel_heatmap.csv");
  CHECK(first_line(spectrum) == "l,n,lambda");
  CHECK(first_line(spiral) == "l,P_l");
  CHECK(first_line(heatmap) == "l,n,lambda");

  // Each spectrum row: integer l, integer n, lambda in (0, 1].
  std::istringstream rows(spectrum);
  std::string line;
  std::getline(rows, line);
  std::size_t count = 0;
  double total = 0.0;
  while (std::getline(rows, line)) {
    int l = 0;
    int n = 0;
    double lambda = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%d,%d,%lf", &l, &n, &lambda) == 3);
    CHECK(n >= 0);
    CHECK(lambda > 0.0);
    total += lambda;
    ++count;
  }
  CHECK(count == out.report.spectrum.entries.size());
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(j["entropy_ebits"].get<double>() == out.report.entropy);
  CHECK(j["schmidt_number"].get<double>() == out.report.schmidt_number);
  CHECK(j["converged"].get<bool>());
  CHECK(j.contains("spiral"));
  CHECK(j["correlated_area"]["width_definition"] == "FWHM");
  CHECK(j["truncation"]["l_max"].get<int>() == out.report.spectrum.l_max);
  CHECK(j.contains("gaussian_estimate"));
  // The embedded config reproduces the run.
  const auto again = parse_config(j["config_text"].get<std::string>());
  CHECK(again.cfg.length() == 5000.0);
  CHECK(again.grid.n_phi == 1024u);
}

TEST_CASE("heatmap keeps coefficients above the floor")
{
  SchmidtSpectrum s;
  s.entries = {{0, 0, 0.9}, {0, 1, 0.09}, {1, 0, 0.001}, {-1, 0, 0.0001}};
  const auto csv = heatmap_csv(s, 1e-3);
  CHECK(csv == "l,n,lambda\n0,0,0.90000000000000002\n0,1,0.089999999999999997\n1,0,0.001\n");
}

TEST_CASE("sweep of one value matches a single run")
{
  const auto dir = scratch_dir("sweep_one");
  SweepRequest sweep{small_request(), SweepAxis::alpha, {1e-6}, 1};
  const auto outcome = run_sweep(sweep, dir / "sweep");
  const auto single = run_single(sweep_point(sweep, 1e-6), dir / "single");
  REQUIRE(outcome.rows.size() == 1);
  REQUIRE(outcome.rows[0].report.has_value());
  CHECK(outcome.rows[0].report->entropy == single.report.entropy);
  CHECK(slurp(dir / "sweep" / "point_000" / "spectrum.csv") == slurp(dir / "single" / "spectrum.csv"));
  CHECK(first_line(slurp(outcome.table)) == "axis_value,E_ebits,K,P0,l_max,converged");
}

TEST_CASE("sweep output does not depend on the worker count")
{
  const auto dir = scratch_dir("sweep_workers");
  SweepRequest sweep{small_request(), SweepAxis::w0, {20.0, 25.0, 30.0}, 1};
  run_sweep(sweep, dir / "one");
  sweep.workers = 3;
  run_sweep(sweep, dir / "three");
  CHECK(slurp(dir / "one" / "sweep.csv") == slurp(dir / "three" / "sweep.csv"));
  for (const char* p : {"point_000", "point_001", "point_002"}) {
    CHECK(slurp(dir / "one" / p / "spectrum.csv") == slurp(dir / "three" / p / "spectrum.csv"));
  }
}

TEST_CASE("failing sweep point is recorded and the sweep continues")
{
  const auto dir = scratch_dir("sweep_fail");
  auto base = small_request();
  base.grid.n_phi = 16;  // aliases at every point
  SweepRequest bad{base, SweepAxis::w0, {30.0}, 1};
  const auto failed = run_sweep(bad, dir / "bad");
  CHECK(failed.status == ExitCode::convergence);
  CHECK_FALSE(failed.rows[0].report.has_value());
  CHECK(slurp(failed.table) == "axis_value,E_ebits,K,P0,l_max,converged\n30,nan,nan,nan,0,failed\n");

  SweepRequest mixed{small_request(), SweepAxis::w0, {-1.0, 30.0}, 1};
  const auto outcome = run_sweep(mixed, dir / "mixed");
  CHECK(outcome.status == ExitCode::config);
  CHECK_FALSE(outcome.rows[0].report.has_value());
  CHECK(outcome.rows[1].report.has_value());
}

TEST_CASE("sweep values must be strictly increasing")
{
  const auto dir = scratch_dir("sweep_order");
  SweepRequest sweep{small_request(), SweepAxis::alpha, {2e-6, 1e-6}, 1};
  CHECK_THROWS_AS(run_sweep(sweep, dir), ConfigError);
  sweep.values = {1e-6, 1e-6};
  CHECK_THROWS_AS(run_sweep(sweep, dir), ConfigError);
  sweep.values = {};
  CHECK_THROWS_AS(run_sweep(sweep, dir), ConfigError);
}

TEST_CASE("axis names")
{
  CHECK(sweep_axis_from_string("alpha") == SweepAxis::alpha);
  CHECK(sweep_axis_from_string("w0") == SweepAxis::w0);
  CHECK(sweep_axis_from_string("L") == SweepAxis::length);
  CHECK_FALSE(sweep_axis_from_string("length").has_value());
}
