#include "sector_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "spatent/schmidt.hpp"

namespace spatent::detail {
namespace {

constexpr double kTrimFraction = 1e-26;

}  // namespace

SectorEngine::SectorEngine(double pump_exponent, const AngularAmplitude& psi, const RadialGrid& grid,
                           std::size_t n_phi, const Options& options)
    : n_(grid.n_radial), n_phi_(n_phi), workers_(options.workers)
{
  const auto& p = grid.rule.nodes;
  const auto s = grid.measure_sqrt();
  const std::size_t half = n_phi / 2;
  const double reach = options.pump_cut / pump_exponent;

  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      const double d = p[j] - p[i];
      if (d * d > reach) {
        break;
      }
      const double t = (reach - p[i] * p[i] - p[j] * p[j]) / (2.0 * p[i] * p[j]);
      std::size_t k_lo = 0;
      if (t < 1.0) {
        const double phi = std::acos(std::max(t, -1.0));
        k_lo = std::min(half, static_cast<std::size_t>(std::floor(phi * static_cast<double>(n_phi) / (2.0 * std::numbers::pi))));
      }
      pairs_.push_back({i, j, k_lo, 0});
      kd_ = std::max(kd_, j - i);
    }
  }
  std::size_t total = 0;
  for (auto& pr : pairs_) {
    pr.offset = total;
    total += half - pr.k_lo + 1;
  }
  samples_.resize(total);

  cos_table_.resize(n_phi);
  for (std::size_t k = 0; k < n_phi; ++k) {
    cos_table_[k] = std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_phi));
  }

  std::vector<double> b0(pairs_.size());
  std::vector<double> b_edge(pairs_.size());
  const double inv_n = 1.0 / static_cast<double>(n_phi);
  parallel_for(pairs_.size(), workers_, [&](std::size_t idx) {
    const Pair& pr = pairs_[idx];
    const double scale = s[pr.i] * s[pr.j];
    Complex sum0{};
    Complex sum_edge{};
    for (std::size_t k = pr.k_lo; k <= half; ++k) {
      const double dphi = 2.0 * std::numbers::pi * static_cast<double>(k) * inv_n;
      const double weight = (k == 0 || k == half) ? inv_n : 2.0 * inv_n;
      const Complex v = weight * psi(p[pr.i], p[pr.j], dphi);
      sum0 += v;
      // cos((n/2 - 1) dphi_k) = (-1)^k cos(dphi_k)
      sum_edge += ((k & 1U) ? -1.0 : 1.0) * cos_table_[k] * v;
      samples_[pr.offset + (k - pr.k_lo)] = scale * v;
    }
    b0[idx] = std::abs(sum0);
    b_edge[idx] = std::abs(sum_edge);
  });
  const double max_b0 = pairs_.empty() ? 0.0 : *std::max_element(b0.begin(), b0.end());
  const double max_edge = pairs_.empty() ? 0.0 : *std::max_element(b_edge.begin(), b_edge.end());
  alias_ratio_ = max_b0 > 0.0 ? max_edge / max_b0 : 0.0;
}

std::vector<std::vector<Complex>> SectorEngine::project(int l0, int count) const
{
  const std::size_t width = 2 * kd_ + 1;
  const std::size_t half = n_phi_ / 2;
  const std::size_t mask = n_phi_ - 1;
  std::vector<std::vector<Complex>> bands(static_cast<std::size_t>(count), std::vector<Complex>(n_ * width));
  parallel_for(pairs_.size(), workers_, [&](std::size_t idx) {
    const Pair& pr = pairs_[idx];
    const Complex* v = samples_.data() + pr.offset;
    const std::size_t len = half - pr.k_lo + 1;
    for (int c = 0; c < count; ++c) {
      const std::size_t l = static_cast<std::size_t>(l0 + c);
      std::size_t phase = (l * pr.k_lo) & mask;
      double re = 0.0;
      double im = 0.0;
      for (std::size_t k = 0; k < len; ++k) {
        const double w = cos_table_[phase];
        re += w * v[k].real();
        im += w * v[k].imag();
        phase = (phase + l) & mask;
      }
      const Complex b(re, im);
      auto& band = bands[static_cast<std::size_t>(c)];
      band[pr.i * width + (pr.j - pr.i + kd_)] = b;
      band[pr.j * width + (pr.i - pr.j + kd_)] = b;
    }
  });
  return bands;
}

SectorEngine::Sector SectorEngine::solve(const std::vector<Complex>& band) const
{
  const std::size_t width = 2 * kd_ + 1;
  Sector out;
  out.row_mass.assign(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < width; ++c) {
      acc += std::norm(band[i * width + c]);
    }
    out.row_mass[i] = acc;
  }
  const double total = sorted_sum(out.row_mass);
  if (!(total > 0.0)) {
    return out;
  }
  std::size_t lo = 0;
  while (lo < n_ && out.row_mass[lo] < kTrimFraction * total) {
    ++lo;
  }
  std::size_t hi = n_;
  while (hi > lo && out.row_mass[hi - 1] < kTrimFraction * total) {
    --hi;
  }
  const std::span<const Complex> active(band.data() + lo * width, (hi - lo) * width);
  out.lambdas = banded_gram_eigenvalues(active, hi - lo, kd_);
  return out;
}

}  // namespace spatent::detail
