#include "spatent/crystal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spatent/errors.hpp"

namespace spatent {
namespace {

void require_positive(double v, const char* what)
{
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + " must be a finite positive number");
  }
}

}  // namespace

double chirp_from_periods(const GratingSpec& g)
{
  require_positive(g.period_in_um, "grating period at entrance face");
  require_positive(g.period_out_um, "grating period at output face");
  require_positive(g.length_um, "grating length");
  return 2.0 * std::numbers::pi / g.length_um * (g.period_out_um - g.period_in_um)
         / (g.period_out_um * g.period_in_um);
}

double output_period_for_chirp(double period_in_um, double length_um, double alpha_per_um2)
{
  require_positive(period_in_um, "grating period at entrance face");
  require_positive(length_um, "grating length");
  const double denom = 1.0 - alpha_per_um2 * length_um * period_in_um / (2.0 * std::numbers::pi);
  if (!(denom > 0.0)) {
    throw ConfigError("requested chirp is not reachable with a positive output period");
  }
  return period_in_um / denom;
}

CrystalPumpConfig CrystalPumpConfig::make(const Params& params)
{
  require_positive(params.lambda_p_um, "pump wavelength");
  require_positive(params.n_e, "refractive index");
  require_positive(params.length_um, "crystal length");
  require_positive(params.waist_um, "pump waist");
  if (!std::isfinite(params.alpha_per_um2) || params.alpha_per_um2 < 0.0) {
    throw ConfigError("chirp parameter must be finite and non-negative");
  }
  if (params.grating_k0_per_um && !std::isfinite(*params.grating_k0_per_um)) {
    throw ConfigError("grating K0 must be finite");
  }
  return CrystalPumpConfig(params);
}

double CrystalPumpConfig::pump_exponent() const noexcept
{
  const double w2 = params_.waist_um * params_.waist_um;
  switch (params_.convention) {
  case WaistConvention::field:
    return 0.25 * w2;
  case WaistConvention::rms:
    return w2;
  }
  return 0.25 * w2;
}

CrystalPumpConfig CrystalPumpConfig::with_alpha(double alpha) const
{
  Params p = params_;
  p.alpha_per_um2 = alpha;
  return make(p);
}

CrystalPumpConfig CrystalPumpConfig::with_waist(double waist_um) const
{
  Params p = params_;
  p.waist_um = waist_um;
  return make(p);
}

CrystalPumpConfig CrystalPumpConfig::with_length(double length_um) const
{
  Params p = params_;
  p.length_um = length_um;
  return make(p);
}

const char* to_string(WaistConvention c) noexcept
{
  switch (c) {
  case WaistConvention::field:
    return "field";
  case WaistConvention::rms:
    return "rms";
  }
  return "field";
}

std::optional<WaistConvention> waist_convention_from_string(const std::string& s)
{
  if (s == "field") {
    return WaistConvention::field;
  }
  if (s == "rms") {
    return WaistConvention::rms;
  }
  return std::nullopt;
}

}  // namespace spatent
