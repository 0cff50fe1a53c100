#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "spatent/amplitude.hpp"
#include "spatent/oam_kernel.hpp"
#include "spatent/schmidt.hpp"

using namespace spatent;
using testgen::Rng;

TEST_CASE("amplitude is symmetric under photon exchange")
{
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cfg = testgen::config(rng, trial % 2 == 0);
    const JointAmplitude amp(cfg);
    const double p = rng.uniform(0.0, 0.5);
    const double q = rng.uniform(0.0, 0.5);
    const double dphi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const auto tp = TransversePair::make(p, q, dphi);
    const Complex a = amp(tp);
    const Complex b = amp(TransversePair::make(q, p, -dphi));
    // Relative to the envelope: near sinc zeros the value itself is ill-conditioned.
    const double scale = pump_factor(tp.sum_norm2(), cfg) * cfg.length();
    CHECK(std::abs(a - b) <= 1e-12 * scale);
  }
}

TEST_CASE("amplitude depends on the relative angle only through its cosine")
{
  Rng rng(102);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cfg = testgen::config(rng, true);
    const JointAmplitude amp(cfg);
    const double p = rng.uniform(0.0, 0.3);
    const double q = rng.uniform(0.0, 0.3);
    const double dphi = rng.uniform(0.0, std::numbers::pi);
    const auto tp = TransversePair::make(p, q, dphi);
    const Complex a = amp(tp);
    const Complex b = amp(TransversePair::make(p, q, 2.0 * std::numbers::pi - dphi));
    const double scale = pump_factor(tp.sum_norm2(), cfg) * cfg.length();
    CHECK(std::abs(a - b) <= 1e-12 * scale);
  }
}

TEST_CASE("modulus is bounded by the pump envelope times L")
{
  Rng rng(103);
  for (int trial = 0; trial < 500; ++trial) {
    const auto cfg = testgen::config(rng, trial % 3 != 0);
    const double p = rng.uniform(0.0, 1.0);
    const double q = rng.uniform(0.0, 1.0);
    const auto tp = TransversePair::make(p, q, rng.uniform(0.0, 6.28));
    const double bound = pump_factor(tp.sum_norm2(), cfg) * cfg.length();
    CHECK(std::abs(JointAmplitude(cfg)(tp)) <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("squared singular values sum to the Frobenius norm")
{
  Rng rng(104);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 60));
    const auto m = testgen::complex_matrix(rng, n);
    double frob = 0.0;
    for (const auto& v : m) {
      frob += std::norm(v);
    }
    const auto s = singular_values_squared(m, n);
    CHECK(sorted_sum(s) == doctest::Approx(frob).epsilon(1e-12));
    CHECK(std::is_sorted(s.rbegin(), s.rend()));
  }
}

TEST_CASE("spectrum is invariant under local unitaries")
{
  Rng rng(105);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 40));
    const auto m = testgen::complex_matrix(rng, n);
    auto rotated = m;
    std::vector<Complex> left(n);
    std::vector<Complex> right(n);
    for (std::size_t i = 0; i < n; ++i) {
      left[i] = std::polar(1.0, rng.uniform(0.0, 6.28));
      right[i] = std::polar(1.0, rng.uniform(0.0, 6.28));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        rotated[i * n + j] *= left[i] * right[j];
      }
    }
    const auto a = singular_values_squared(m, n);
    const auto b = singular_values_squared(rotated, n);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(a[k] - b[k]) <= 1e-11 * a[0]);
    }
  }
}

TEST_CASE("entropy and Schmidt number bounds")
{
  Rng rng(106);
  for (int trial = 0; trial < 500; ++trial) {
    const auto v = testgen::spectrum(rng);
    const double d = static_cast<double>(v.size());
    const double e = entropy(v);
    const double k = schmidt_number(v);
    CHECK(e >= -1e-15);
    CHECK(e <= std::log2(d) + 1e-12);
    CHECK(k >= 1.0 - 1e-12);
    CHECK(k <= d * (1.0 + 1e-12));
    // Renyi-2 never exceeds von Neumann entropy.
    CHECK(std::log2(k) <= e + 1e-12);
  }
}

TEST_CASE("assembled spectra are normalized for any symmetric sector set")
{
  Rng rng(107);
  for (int trial = 0; trial < 200; ++trial) {
    const int lmax = rng.integer(0, 12);
    std::map<int, std::vector<double>> per_l;
    for (int l = 0; l <= lmax; ++l) {
      std::vector<double> v;
      const int n = rng.integer(1, 20);
      for (int i = 0; i < n; ++i) {
        v.push_back(rng.log_uniform(1e-20, 1.0));
      }
      per_l[l] = v;
      per_l[-l] = v;
    }
    const auto spec = assemble_spectrum(per_l);
    CHECK(sorted_sum(spec.lambdas()) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(spec.tail_mass >= 0.0);
    const auto spiral = spiral_spectrum(spec);
    for (const auto& [l, p] : spiral) {
      CHECK(spiral.at(-l) == p);
    }
    for (const auto& e : spec.entries) {
      CHECK(e.lambda >= spec.eps_mode * 0.999);
    }
  }
}

TEST_CASE("sector projections are even in l for random configurations")
{
  Rng rng(108);
  for (int trial = 0; trial < 40; ++trial) {
    const auto cfg = testgen::config(rng, trial % 2 == 0);
    // Keep the pump factor at the antipodal point representable.
    const double p = rng.uniform(0.01, 0.2);
    const double q = std::max(0.005, p + rng.uniform(-1.0, 1.0) * std::sqrt(20.0 / cfg.pump_exponent()));
    const Complex b0 = azimuthal_project(0, p, q, cfg, 16384);
    const int l = rng.integer(1, 50);
    const Complex plus = azimuthal_project(l, p, q, cfg, 16384);
    const Complex minus = azimuthal_project(-l, p, q, cfg, 16384);
    CHECK(std::abs(plus - minus) <= 1e-12 * std::abs(b0));
  }
}
