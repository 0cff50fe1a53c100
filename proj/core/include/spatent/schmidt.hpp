#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "spatent/faddeeva.hpp"
#include "spatent/oam_kernel.hpp"

namespace spatent {

inline constexpr double kDefaultEpsMode = 1e-12;
inline constexpr double kDefaultEpsTail = 1e-7;

/// Squared singular values of a dense row-major n x n matrix, descending.
std::vector<double> singular_values_squared(std::span<const Complex> matrix, std::size_t n);

/// Eigenvalues of M^H M for a complex symmetric band matrix M (M_ij = M_ji,
/// zero for |i - j| > kd), descending and clipped at zero.
/// `band` holds row i at band[i * (2 kd + 1) + (j - i + kd)].
std::vector<double> banded_gram_eigenvalues(std::span<const Complex> band, std::size_t n, std::size_t kd);

/// Schmidt coefficients of one sector: lambda = sigma^2 of kernel.weighted(), descending,
/// dropping lambda < eps_mode * sum(lambda).
std::vector<double> schmidt_decompose(const OamKernel& kernel, double eps_mode = kDefaultEpsMode);

struct SchmidtMode {
  int l = 0;
  int n = 0;
  double lambda = 0.0;
};

/// Normalized Schmidt spectrum over all retained OAM sectors.
/// Entries are ordered by l, then by descending lambda (n = 0, 1, ...).
struct SchmidtSpectrum {
  std::vector<SchmidtMode> entries;
  int l_max = 0;
  double eps_mode = kDefaultEpsMode;
  double eps_tail = kDefaultEpsTail;
  /// Estimated weight outside the retained set, relative to the retained total:
  /// dropped modes plus a geometric extrapolation of the spiral tail.
  double tail_mass = 0.0;
  /// True when the outermost three sectors on each side carry less than eps_tail each.
  bool spiral_decayed = false;

  [[nodiscard]] std::vector<double> lambdas() const;
};

/// Normalizes per-sector coefficients so the total is one.
/// Requires sector coverage symmetric around zero (std::invalid_argument otherwise).
SchmidtSpectrum assemble_spectrum(const std::map<int, std::vector<double>>& per_l,
                                  double eps_tail = kDefaultEpsTail,
                                  double eps_mode = kDefaultEpsMode);

/// -sum lambda log2 lambda, summed in ascending order of lambda.
double entropy(std::span<const double> lambdas);
double entropy(const SchmidtSpectrum& spec);

/// 1 / sum lambda^2.
double schmidt_number(std::span<const double> lambdas);
double schmidt_number(const SchmidtSpectrum& spec);

/// P_l = sum_n lambda_nl.
std::map<int, double> spiral_spectrum(const SchmidtSpectrum& spec);

/// Sum of non-negative terms in ascending order, so the result does not depend
/// on the order in which they were produced.
double sorted_sum(std::vector<double> terms);

}  // namespace spatent
