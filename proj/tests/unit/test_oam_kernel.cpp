#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spatent/amplitude.hpp"
#include "spatent/errors.hpp"
#include "spatent/oam_kernel.hpp"
#include "spatent/schmidt.hpp"

using namespace spatent;

namespace {

CrystalPumpConfig config(double alpha, WaistConvention conv = WaistConvention::rms)
{
  CrystalPumpConfig::Params p;
  p.alpha_per_um2 = alpha;
  p.convention = conv;
  return CrystalPumpConfig::make(p);
}

// exp(-a (|p|^2 + |q|^2) - 2 b p.q) in polar form.
AngularAmplitude double_gaussian(double a, double b)
{
  return [a, b](double p, double q, double dphi) {
    return Complex(std::exp(-a * (p * p + q * q) - 2.0 * b * p * q * std::cos(dphi)), 0.0);
  };
}

}  // namespace

TEST_CASE("projection at the origin keeps only l = 0")
{
  const auto cfg = config(0.0);
  const Complex b0 = azimuthal_project(0, 0.0, 0.0, cfg, 256);
  CHECK(b0.real() == doctest::Approx(cfg.length()));
  for (int l : {1, 2, 7, -3}) {
    CHECK(std::abs(azimuthal_project(l, 0.0, 0.0, cfg, 256)) < 1e-12 * cfg.length());
  }
}

TEST_CASE("projection is even in l")
{
  const auto cfg = config(3e-6);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int i = 0; i < 10; ++i) {
    const double p = u(rng);
    const double q = p + 0.004 * (u(rng) - 0.5);
    const Complex b0 = azimuthal_project(0, p, q, cfg, 8192);
    for (int l : {1, 5, 40}) {
      const Complex plus = azimuthal_project(l, p, q, cfg, 8192);
      const Complex minus = azimuthal_project(-l, p, q, cfg, 8192);
      CHECK(std::abs(plus - minus) <= 1e-12 * std::abs(b0));
    }
  }
}

TEST_CASE("discrete transform matches direct angular quadrature of the sinc amplitude")
{
  // (1/2 pi) int dphi Psi(0.05, 0.05, dphi), mpmath (tests/oracles/amplitude_reference.py)
  const Complex rms = azimuthal_project(0, 0.05, 0.05, config(0.0), 256);
  CHECK(rms.real() == doctest::Approx(800.58314766598181761).epsilon(1e-9));
  CHECK(std::abs(rms.imag()) < 1e-12);
  const Complex field = azimuthal_project(0, 0.05, 0.05, config(0.0, WaistConvention::field), 256);
  CHECK(field.real() == doctest::Approx(1632.1395518135384524).epsilon(1e-9));
}

TEST_CASE("coarse angular sampling is reported")
{
  CHECK_THROWS_AS(azimuthal_project(0, 0.3, 0.3, config(0.0), 16), ConvergenceError);
  CHECK_THROWS_AS(azimuthal_project(0, 0.3, 0.3, config(0.0), 100), ConfigError);
  CHECK_THROWS_AS(azimuthal_project(20, 0.0, 0.0, config(0.0), 64), ConfigError);
}

TEST_CASE("zero amplitude gives a zero kernel")
{
  const auto grid = RadialGrid::make(1.0, 16);
  const auto k = build_kernel(0, grid, AngularAmplitude([](double, double, double) { return Complex{}; }), 16);
  for (const auto& v : k.values) {
    CHECK(v == Complex{});
  }
  for (double s : singular_values_squared(k.weighted(), k.size())) {
    CHECK(s == 0.0);
  }
}

TEST_CASE("separable kernel has rank one")
{
  const auto grid = RadialGrid::make(3.0, 32);
  const auto k = build_kernel(2, grid, RadialKernel([](double p, double q) {
                                return Complex(std::exp(-p * p) * (1.0 + q), 0.5 * std::exp(-p * p) * (1.0 + q));
                              }));
  const auto m = k.weighted();
  double frob = 0.0;
  for (const auto& v : m) {
    frob += std::norm(v);
  }
  const auto lambdas = schmidt_decompose(k);
  REQUIRE(lambdas.size() == 1);
  CHECK(lambdas[0] == doctest::Approx(frob).epsilon(1e-12));
}

TEST_CASE("weighted kernel folds in sqrt(w p) on both sides")
{
  const auto grid = RadialGrid::make(2.0, 8);
  const auto k = build_kernel(0, grid, RadialKernel([](double, double) { return Complex(1.0, 0.0); }));
  const auto m = k.weighted();
  const auto& r = grid.rule;
  CHECK(m[3 * 8 + 5].real() == doctest::Approx(std::sqrt(r.weights[3] * r.nodes[3] * r.weights[5] * r.nodes[5])));
}

TEST_CASE("Mehler kernel: sector spectra of the two-dimensional double Gaussian")
{
  // exp(-a(|p|^2+|q|^2) - 2b p.q) has Cartesian Schmidt coefficients N (1-mu)^2 mu^(n1+n2);
  // sector l holds n1 + n2 = 2k + |l|. N = pi^2 / (4 (a^2 - b^2)). Sector kernels carry
  // the angular modes without their 1/sqrt(2 pi) normalization, hence the (2 pi)^2.
  const double a = 1.0;
  const double b = 0.6;
  const double mu = b * b / std::pow(a + std::sqrt(a * a - b * b), 2);
  const double norm = std::numbers::pi * std::numbers::pi / (4.0 * (a * a - b * b)) / (4.0 * std::numbers::pi * std::numbers::pi);
  const auto grid = RadialGrid::make(7.0, 96);

  for (int l : {0, 1, 3}) {
    CAPTURE(l);
    const auto radial = build_kernel(l, grid, RadialKernel([&](double p, double q) {
                                       return Complex((l % 2 ? -1.0 : 1.0) * std::exp(-a * (p * p + q * q))
                                                          * std::cyl_bessel_i(static_cast<double>(l), 2.0 * b * p * q),
                                                      0.0);
                                     }));
    const auto projected = build_kernel(l, grid, double_gaussian(a, b), 64);
    for (const auto* k : {&radial, &projected}) {
      const auto lambdas = schmidt_decompose(*k, 1e-14);
      REQUIRE(lambdas.size() >= 6);
      for (std::size_t n = 0; n < 6; ++n) {
        const double want = norm * (1.0 - mu) * (1.0 - mu) * std::pow(mu, 2.0 * n + std::abs(l));
        CHECK(std::abs(lambdas[n] - want) < 1e-8 * norm);
      }
    }
  }
}
