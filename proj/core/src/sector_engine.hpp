#pragma once

#include <cstddef>
#include <vector>

#include "spatent/faddeeva.hpp"
#include "spatent/oam_kernel.hpp"
#include "spatent/radial_grid.hpp"

namespace spatent::detail {

// Banded evaluation of all OAM sector kernels on one grid.
//
// The pump factor exp(-c |p+q|^2) confines the amplitude to |p - q| and to
// angles near dphi = pi, so only grid pairs with c (p_i - p_j)^2 <= cut are
// kept and each pair is sampled only on the part of the half circle where the
// pump exponent stays below cut. Evenness in dphi turns the projection into a
// cosine sum over the half circle.
class SectorEngine {
public:
  struct Options {
    std::size_t workers = 1;
    double pump_cut = 40.0;
  };

  SectorEngine(double pump_exponent, const AngularAmplitude& psi, const RadialGrid& grid, std::size_t n_phi,
               const Options& options);

  [[nodiscard]] std::size_t n_radial() const noexcept { return n_; }
  [[nodiscard]] std::size_t bandwidth() const noexcept { return kd_; }
  [[nodiscard]] std::size_t n_pairs() const noexcept { return pairs_.size(); }
  [[nodiscard]] std::size_t n_samples() const noexcept { return samples_.size(); }
  [[nodiscard]] std::size_t n_phi() const noexcept { return n_phi_; }
  // max |B_{n_phi/2-1}| / max |B_0| over the grid.
  [[nodiscard]] double alias_ratio() const noexcept { return alias_ratio_; }
  [[nodiscard]] std::size_t band_size() const noexcept { return n_ * (2 * kd_ + 1); }

  // Weighted band matrices M for sectors l0 .. l0 + count - 1 (l0 >= 0).
  [[nodiscard]] std::vector<std::vector<Complex>> project(int l0, int count) const;

  struct Sector {
    std::vector<double> lambdas;
    // sum_j |M_ij|^2 for every grid row.
    std::vector<double> row_mass;
  };
  // Schmidt coefficients of one band matrix. Leading and trailing rows whose
  // weight is negligible are trimmed before the eigensolve.
  [[nodiscard]] Sector solve(const std::vector<Complex>& band) const;

private:
  struct Pair {
    std::size_t i;
    std::size_t j;
    std::size_t k_lo;
    std::size_t offset;
  };

  std::size_t n_ = 0;
  std::size_t kd_ = 0;
  std::size_t n_phi_ = 0;
  std::size_t workers_ = 1;
  double alias_ratio_ = 0.0;
  std::vector<Pair> pairs_;
  std::vector<Complex> samples_;
  std::vector<double> cos_table_;
};

}  // namespace spatent::detail
