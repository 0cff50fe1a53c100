#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "spatent/amplitude.hpp"
#include "spatent/analysis.hpp"
#include "spatent/faddeeva.hpp"
#include "spatent/schmidt.hpp"

namespace {

using namespace spatent;

CrystalPumpConfig chirped()
{
  CrystalPumpConfig::Params p;
  p.alpha_per_um2 = 2.5e-6;
  return CrystalPumpConfig::make(p);
}

void BM_Faddeeva(benchmark::State& state)
{
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  std::vector<Complex> z(1024);
  for (auto& v : z) {
    v = {u(rng), std::abs(u(rng))};
  }
  for (auto _ : state) {
    for (const auto& v : z) {
      benchmark::DoNotOptimize(faddeeva(v));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(z.size()));
}
BENCHMARK(BM_Faddeeva);

void BM_LongitudinalClosedForm(benchmark::State& state)
{
  const auto cfg = chirped();
  double d = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(longitudinal_closed_form(d, cfg));
    d = d < 0.5 ? d + 1e-4 : 0.0;
  }
}
BENCHMARK(BM_LongitudinalClosedForm);

void BM_LongitudinalQuadrature(benchmark::State& state)
{
  const auto cfg = chirped();
  const auto n = static_cast<std::size_t>(state.range(0));
  double d = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(longitudinal_quadrature(d, cfg, n));
    d = d < 0.5 ? d + 1e-4 : 0.0;
  }
}
BENCHMARK(BM_LongitudinalQuadrature)->Arg(512)->Arg(4096);

std::vector<Complex> random_band(std::size_t n, std::size_t kd)
{
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  const std::size_t w = 2 * kd + 1;
  std::vector<Complex> band(n * w);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < std::min(n, i + kd + 1); ++j) {
      const Complex v(g(rng), g(rng));
      band[i * w + (j - i + kd)] = v;
      band[j * w + (i - j + kd)] = v;
    }
  }
  return band;
}

void BM_BandedGram(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t kd = 24;
  const auto band = random_band(n, kd);
  for (auto _ : state) {
    benchmark::DoNotOptimize(banded_gram_eigenvalues(band, n, kd));
  }
}
BENCHMARK(BM_BandedGram)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_DenseSvd(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<Complex> m(n * n);
  for (auto& v : m) {
    v = {g(rng), g(rng)};
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(singular_values_squared(m, n));
  }
}
BENCHMARK(BM_DenseSvd)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SpectrumUnchirped(benchmark::State& state)
{
  const auto cfg = CrystalPumpConfig::make({});
  GridSettings settings;
  settings.n_radial = 128;
  ComputeOptions options;
  options.convergence_gate = false;
  options.correlated_area = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(cfg, settings, options).entropy);
  }
}
BENCHMARK(BM_SpectrumUnchirped)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
