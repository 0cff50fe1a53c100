#pragma once

#include <numbers>
#include <optional>
#include <string>

namespace spatent {

/// Linearly chirped poling: period at the entrance and output faces.
/// All lengths in micrometers.
struct GratingSpec {
  double period_in_um = 0.0;
  double period_out_um = 0.0;
  double length_um = 0.0;
};

/// Chirp rate alpha = (2 pi / L) (p_f - p_i) / (p_f p_i) in um^-2.
/// Signed: p_f < p_i gives alpha < 0, which the amplitude evaluators reject.
double chirp_from_periods(const GratingSpec& g);

/// Output-face period that produces the requested chirp for a given entrance period.
double output_period_for_chirp(double period_in_um, double length_um, double alpha_per_um2);

/// How the pump waist enters the transverse pump spectrum exp(-c w0^2 |p+q|^2).
enum class WaistConvention {
  /// c = 1/4: Gaussian field exp(-r^2 / w0^2).
  field,
  /// c = 1: w0 is the rms radius of the pump intensity, exp(-r^2 / 2 w0^2).
  rms,
};

/// Physical parameters of one SPDC configuration, in micrometer units.
/// Immutable once built through make().
class CrystalPumpConfig {
public:
  struct Params {
    double lambda_p_um = 0.4;
    double n_e = 2.27857;
    double length_um = 20000.0;
    double waist_um = 100.0;
    double alpha_per_um2 = 0.0;
    std::optional<double> grating_k0_per_um;
    WaistConvention convention = WaistConvention::rms;
  };

  /// Validates and freezes the parameters. Throws ConfigError.
  static CrystalPumpConfig make(const Params& params);

  [[nodiscard]] const Params& params() const noexcept { return params_; }
  [[nodiscard]] double lambda_p() const noexcept { return params_.lambda_p_um; }
  [[nodiscard]] double n_e() const noexcept { return params_.n_e; }
  [[nodiscard]] double length() const noexcept { return params_.length_um; }
  [[nodiscard]] double waist() const noexcept { return params_.waist_um; }
  [[nodiscard]] double alpha() const noexcept { return params_.alpha_per_um2; }
  [[nodiscard]] WaistConvention convention() const noexcept { return params_.convention; }

  /// k_p = 2 pi n_e / lambda_p in rad/um.
  [[nodiscard]] double k_p() const noexcept { return 2.0 * std::numbers::pi * params_.n_e / params_.lambda_p_um; }

  /// Coefficient of |p+q|^2 in the pump exponent.
  [[nodiscard]] double pump_exponent() const noexcept;

  /// Pump Rayleigh range k_p w0^2 / 2.
  [[nodiscard]] double rayleigh_range() const noexcept { return 0.5 * k_p() * params_.waist_um * params_.waist_um; }

  /// Returns a copy with one parameter replaced, re-validated.
  [[nodiscard]] CrystalPumpConfig with_alpha(double alpha) const;
  [[nodiscard]] CrystalPumpConfig with_waist(double waist_um) const;
  [[nodiscard]] CrystalPumpConfig with_length(double length_um) const;

private:
  explicit CrystalPumpConfig(const Params& p) : params_(p) {}
  Params params_;
};

const char* to_string(WaistConvention c) noexcept;
std::optional<WaistConvention> waist_convention_from_string(const std::string& s);

}  // namespace spatent
