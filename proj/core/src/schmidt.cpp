#include "spatent/schmidt.hpp"

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "spatent/errors.hpp"

namespace spatent {

double sorted_sum(std::vector<double> terms)
{
  std::sort(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) {
    acc += t;
  }
  return acc;
}

std::vector<double> singular_values_squared(std::span<const Complex> matrix, std::size_t n)
{
  if (matrix.size() != n * n) {
    throw std::invalid_argument("matrix size does not match n * n");
  }
  using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const Mat> m(matrix.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  if (!m.allFinite()) {
    throw ConvergenceError("kernel matrix has non-finite entries");
  }
  Eigen::BDCSVD<Mat> svd(m);
  if (svd.info() != Eigen::Success) {
    throw ConvergenceError("SVD did not converge");
  }
  std::vector<double> out;
  out.reserve(n);
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    const double s = svd.singularValues()[k];
    out.push_back(s * s);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> banded_gram_eigenvalues(std::span<const Complex> band, std::size_t n, std::size_t kd)
{
  const std::size_t width = 2 * kd + 1;
  if (band.size() != n * width) {
    throw std::invalid_argument("band storage size does not match n * (2 kd + 1)");
  }
  if (n == 0) {
    return {};
  }
  auto at = [&](std::size_t i, std::size_t j) -> Complex {
    return band[i * width + (j + kd - i)];
  };

  // Upper band of H = M^H M in LAPACK column-major band storage.
  const std::size_t kh = std::min(2 * kd, n - 1);
  const std::size_t ld = kh + 1;
  std::vector<Complex> h(ld * n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i_lo = j >= kh ? j - kh : 0;
    for (std::size_t i = i_lo; i <= j; ++i) {
      // M_ki and M_kj are both inside the band for k in [j - kd, i + kd].
      const std::size_t k_lo = j >= kd ? j - kd : 0;
      const std::size_t k_hi = std::min(n - 1, i + kd);
      Complex s{};
      for (std::size_t k = k_lo; k <= k_hi; ++k) {
        s += std::conj(at(k, i)) * at(k, j);
      }
      h[(kh + i - j) + j * ld] = s;
    }
  }
  for (const Complex& v : h) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ConvergenceError("kernel band has non-finite entries");
    }
  }
  std::vector<double> w(n);
  const lapack_int info = LAPACKE_zhbevd(LAPACK_COL_MAJOR, 'N', 'U', static_cast<lapack_int>(n),
                                         static_cast<lapack_int>(kh),
                                         reinterpret_cast<lapack_complex_double*>(h.data()),
                                         static_cast<lapack_int>(ld), w.data(), nullptr, 1);
  if (info != 0) {
    throw ConvergenceError("banded eigensolver failed, info = " + std::to_string(info));
  }
  for (double& v : w) {
    v = std::max(v, 0.0);
  }
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

std::vector<double> schmidt_decompose(const OamKernel& kernel, double eps_mode)
{
  auto lambdas = singular_values_squared(kernel.weighted(), kernel.size());
  const double total = sorted_sum(lambdas);
  std::erase_if(lambdas, [&](double v) { return v < eps_mode * total || v == 0.0; });
  return lambdas;
}

std::vector<double> SchmidtSpectrum::lambdas() const
{
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    out.push_back(e.lambda);
  }
  return out;
}

SchmidtSpectrum assemble_spectrum(const std::map<int, std::vector<double>>& per_l, double eps_tail, double eps_mode)
{
  for (const auto& [l, values] : per_l) {
    if (!per_l.contains(-l)) {
      throw std::invalid_argument("sector coverage is not symmetric: l = " + std::to_string(l) + " has no partner");
    }
    for (double v : values) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("Schmidt coefficients must be finite and non-negative");
      }
    }
  }

  std::vector<double> all;
  for (const auto& [l, values] : per_l) {
    all.insert(all.end(), values.begin(), values.end());
  }
  const double raw_total = sorted_sum(all);
  if (!(raw_total > 0.0)) {
    throw ConvergenceError("Schmidt spectrum has zero total weight");
  }

  SchmidtSpectrum spec;
  spec.eps_mode = eps_mode;
  spec.eps_tail = eps_tail;
  std::vector<double> dropped;
  std::map<int, double> sector_mass;
  for (const auto& [l, values] : per_l) {
    std::vector<double> kept;
    for (double v : values) {
      if (v >= eps_mode * raw_total && v > 0.0) {
        kept.push_back(v);
      } else {
        dropped.push_back(v);
      }
    }
    std::sort(kept.begin(), kept.end(), std::greater<>());
    for (std::size_t n = 0; n < kept.size(); ++n) {
      spec.entries.push_back({l, static_cast<int>(n), kept[n]});
    }
    sector_mass[l] = sorted_sum(values) / raw_total;
    spec.l_max = std::max(spec.l_max, std::abs(l));
  }

  const double kept_total = sorted_sum(spec.lambdas());
  for (auto& e : spec.entries) {
    e.lambda /= kept_total;
  }

  // Outermost three sectors on each side decide whether the spiral has decayed;
  // a geometric continuation of the last two estimates the unseen tail.
  bool decayed = per_l.size() >= 5;
  double spiral_tail = 0.0;
  for (int side : {-1, 1}) {
    std::vector<double> outer;
    for (int k = 0; k < 3 && decayed; ++k) {
      const int l = side * (spec.l_max - k);
      const auto it = sector_mass.find(l);
      if (it == sector_mass.end() || it->second >= eps_tail) {
        decayed = false;
      } else {
        outer.push_back(it->second);
      }
    }
    if (decayed && outer[1] > 0.0) {
      const double ratio = std::min(outer[0] / outer[1], 0.999);
      spiral_tail += outer[0] * ratio / (1.0 - ratio);
    }
  }
  spec.spiral_decayed = decayed;
  spec.tail_mass = sorted_sum(dropped) / kept_total + spiral_tail;
  return spec;
}

double entropy(std::span<const double> lambdas)
{
  std::vector<double> terms;
  terms.reserve(lambdas.size());
  for (double v : lambdas) {
    if (v > 0.0) {
      terms.push_back(-v * std::log2(v));
    }
  }
  return sorted_sum(std::move(terms));
}

double entropy(const SchmidtSpectrum& spec)
{
  return entropy(spec.lambdas());
}

double schmidt_number(std::span<const double> lambdas)
{
  std::vector<double> terms;
  terms.reserve(lambdas.size());
  for (double v : lambdas) {
    terms.push_back(v * v);
  }
  return 1.0 / sorted_sum(std::move(terms));
}

double schmidt_number(const SchmidtSpectrum& spec)
{
  return schmidt_number(spec.lambdas());
}

std::map<int, double> spiral_spectrum(const SchmidtSpectrum& spec)
{
  std::map<int, std::vector<double>> grouped;
  for (const auto& e : spec.entries) {
    grouped[e.l].push_back(e.lambda);
  }
  std::map<int, double> out;
  for (auto& [l, values] : grouped) {
    out[l] = sorted_sum(std::move(values));
  }
  return out;
}

}  // namespace spatent
