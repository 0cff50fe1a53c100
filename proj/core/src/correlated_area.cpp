#include "spatent/correlated_area.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spatent/amplitude.hpp"
#include "spatent/errors.hpp"

namespace spatent {
namespace {

constexpr int kScan = 257;
constexpr double kPumpCut = 40.0;

class ConditionalDensity {
public:
  ConditionalDensity(const CrystalPumpConfig& cfg, double q, double phi_q) : amp_(cfg), q_(q), phi_q_(phi_q) {}

  double at_cartesian(double x, double y) const
  {
    return at_polar(std::hypot(x, y), std::atan2(y, x));
  }

  double at_polar(double p, double phi) const
  {
    return std::norm(amp_(TransversePair::make(p, q_, phi - phi_q_)));
  }

private:
  JointAmplitude amp_;
  double q_;
  double phi_q_;
};

// Golden-section maximization of a unimodal function on [a, b].
template <class F>
double golden_max(F&& f, double a, double b)
{
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 100 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Half-maximum crossing of f from x0 (where f > level) in direction dir.
template <class F>
double crossing(F&& f, double x0, double dir, double step, double level, double limit)
{
  double inside = x0;
  double outside = x0;
  for (int it = 0;; ++it) {
    outside = x0 + dir * step * (it + 1);
    if (dir * (outside - limit) > 0.0 || it > 100000) {
      throw ConvergenceError("half-maximum crossing of the conditional density not bracketed");
    }
    if (f(outside) < level) {
      break;
    }
    inside = outside;
  }
  for (int it = 0; it < 200 && std::abs(outside - inside) > 1e-14 * (1.0 + std::abs(x0)); ++it) {
    const double mid = 0.5 * (inside + outside);
    (f(mid) < level ? outside : inside) = mid;
  }
  return 0.5 * (inside + outside);
}

}  // namespace

double default_conditioning_radius(const CrystalPumpConfig& cfg)
{
  const double band = cfg.alpha() * cfg.length() + 4.0 * std::numbers::pi / cfg.length();
  return 0.25 * std::sqrt(cfg.k_p() * band);
}

CorrelatedArea correlated_area(const CrystalPumpConfig& cfg, double q, double phi_q)
{
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw ConfigError("conditioning wavenumber must be positive, got " + std::to_string(q));
  }
  const ConditionalDensity f(cfg, q, phi_q);
  const double cx = -q * std::cos(phi_q);
  const double cy = -q * std::sin(phi_q);
  const double radius = std::sqrt(kPumpCut / cfg.pump_exponent());
  const double h = 2.0 * radius / (kScan - 1);

  double best = -1.0;
  int bi = 0;
  int bj = 0;
  for (int i = 0; i < kScan; ++i) {
    for (int j = 0; j < kScan; ++j) {
      const double dx = -radius + h * i;
      const double dy = -radius + h * j;
      if (dx * dx + dy * dy > radius * radius) {
        continue;
      }
      const double v = f.at_cartesian(cx + dx, cy + dy);
      if (v > best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  const double bx = cx - radius + h * bi;
  const double by = cy - radius + h * bj;
  if (!(best > 0.0) || std::hypot(bx - cx, by - cy) > radius - 1.5 * h || std::hypot(bx, by) < h) {
    throw ConvergenceError("conditional density has no interior maximum");
  }

  // Alternate radial and azimuthal line searches around the scan maximum.
  double p = std::hypot(bx, by);
  double phi = std::atan2(by, bx);
  for (int sweep = 0; sweep < 6; ++sweep) {
    p = golden_max([&](double s) { return f.at_polar(s, phi); }, std::max(0.0, p - 2.0 * h), p + 2.0 * h);
    const double dphi = 2.0 * h / p;
    phi = golden_max([&](double t) { return f.at_polar(p, t); }, phi - dphi, phi + dphi);
  }
  const double peak = f.at_polar(p, phi);
  const double half = 0.5 * peak;
  const double step = h / 8.0;

  const auto radial = [&](double s) { return f.at_polar(s, phi); };
  const double r_lo = crossing(radial, p, -1.0, step, half, 0.0);
  const double r_hi = crossing(radial, p, 1.0, step, half, p + 2.0 * radius);
  const auto arc = [&](double t) { return f.at_polar(p, t); };
  const double a_lo = crossing(arc, phi, -1.0, step / p, half, phi - std::numbers::pi);
  const double a_hi = crossing(arc, phi, 1.0, step / p, half, phi + std::numbers::pi);

  CorrelatedArea out;
  out.radial_width = r_hi - r_lo;
  out.azimuthal_width = a_hi - a_lo;
  out.q = q;
  out.phi_q = phi_q;
  out.peak_p = p;
  out.peak_phi = std::remainder(phi, 2.0 * std::numbers::pi);
  return out;
}

}  // namespace spatent
