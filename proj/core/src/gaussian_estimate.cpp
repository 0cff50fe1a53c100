#include "spatent/gaussian_estimate.hpp"

#include <cmath>
#include <string>

#include "spatent/errors.hpp"

namespace spatent {
namespace {

constexpr double kReferenceLength = 20000.0;
constexpr double kReferenceEntropy = 4.2;

}  // namespace

double double_gaussian_ratio(double a, double b)
{
  if (!(a > std::abs(b))) {
    throw ConfigError("double Gaussian kernel requires a > |b|");
  }
  const double root = a + std::sqrt((a - b) * (a + b));
  return (b * b) / (root * root);
}

double geometric_entropy(double mu)
{
  if (mu <= 0.0) {
    return 0.0;
  }
  return -std::log2(1.0 - mu) - mu / (1.0 - mu) * std::log2(mu);
}

double gaussian_approx_entropy(const CrystalPumpConfig& cfg, double gamma_fit)
{
  if (cfg.alpha() != 0.0) {
    throw ConfigError("the Gaussian estimate applies to unchirped crystals only");
  }
  if (!(gamma_fit > 0.0)) {
    throw ConfigError("gamma must be positive, got " + std::to_string(gamma_fit));
  }
  // exp(-c (x+y)^2 - g (x-y)^2) = exp(-(c+g)(x^2+y^2) - 2(c-g) x y)
  const double c = cfg.pump_exponent();
  const double g = gamma_fit * cfg.length() / (4.0 * cfg.k_p());
  return 2.0 * geometric_entropy(double_gaussian_ratio(c + g, c - g));
}

GammaCalibration calibrate_sinc_gamma(const CrystalPumpConfig& reference, double target_entropy)
{
  if (!(target_entropy > 0.0)) {
    throw ConfigError("calibration target must be positive");
  }
  // Entropy is unimodal in gamma with its zero at the matched width; the
  // branch below the match (sinc narrower than the pump) is the physical one.
  const double matched = reference.pump_exponent() * 4.0 * reference.k_p() / reference.length();
  double lo = matched * 1e-12;
  double hi = matched;
  if (gaussian_approx_entropy(reference, lo) < target_entropy) {
    throw ConfigError("calibration target entropy is out of reach");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (gaussian_approx_entropy(reference, mid) > target_entropy ? lo : hi) = mid;
  }
  return {std::sqrt(lo * hi), target_entropy, reference.length()};
}

GammaCalibration default_sinc_gamma(const CrystalPumpConfig& cfg)
{
  return calibrate_sinc_gamma(cfg.with_alpha(0.0).with_length(kReferenceLength), kReferenceEntropy);
}

double gaussian_approx_entropy(const CrystalPumpConfig& cfg)
{
  return gaussian_approx_entropy(cfg, default_sinc_gamma(cfg).gamma);
}

}  // namespace spatent
