#include "spatent/faddeeva.hpp"

#include <cmath>
#include <limits>

namespace spatent {
namespace {

constexpr double kInvSqrtPi = 0.56418958354775628694807945156;
constexpr double kTwoOverSqrtPi = 1.12837916709551257389615890312;

// Spacing of the exponential sums, pi / sqrt(-log(eps/2)).
constexpr double kSumStep = 0.518321480430085929872;
constexpr double kSumStep2 = kSumStep * kSumStep;
constexpr double kSumScale = 2.0 * kSumStep / 3.14159265358979323846264338328;

// exp(-x^2) with the rounding error of x*x folded back in.
double exp_minus_square(double x)
{
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(-hi) * (1.0 - lo);
}

double exp_square(double x)
{
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(hi) * (1.0 + lo);
}

double sinc(double t, double sin_t)
{
  return t == 0.0 ? 1.0 : sin_t / t;
}

// Laplace continued fraction, valid for Im z > 0 away from the origin.
Complex continued_fraction(double x, double y)
{
  const double s = std::abs(x) + y;
  if (s > 1e7) {
    return Complex(0.0, kInvSqrtPi) / Complex(x, y);
  }
  // Term count fit from Poppe & Wijers style estimates, padded.
  const int terms = static_cast<int>(std::floor(3.9 + 11.398 / (0.08254 * std::abs(x) + 0.1421 * y + 0.2023))) + 12;
  const Complex z(x, y);
  Complex acc = z;
  for (int k = terms - 1; k >= 1; --k) {
    acc = z - (0.5 * k) / acc;
  }
  return Complex(0.0, kInvSqrtPi) / acc;
}

// Zaghloul & Ali exponential sums for the inner region of the upper half-plane.
Complex exponential_sums(double x, double y)
{
  const double ax = std::abs(x);
  const double y2 = y * y;

  double sum1 = 0.0;
  for (int n = 1; n <= 14; ++n) {
    const double an2 = kSumStep2 * n * n;
    sum1 += std::exp(-an2) / (an2 + y2);
  }

  // Only n with |a n - |x|| < ~6.1 contribute at double precision.
  double sum23 = 0.0;
  double sum_diff = 0.0;
  const int n_lo = std::max(1, static_cast<int>(std::floor((ax - 6.2) / kSumStep)));
  const int n_hi = static_cast<int>(std::ceil((ax + 6.2) / kSumStep));
  for (int n = n_lo; n <= n_hi; ++n) {
    const double an = kSumStep * n;
    const double den = an * an + y2;
    const double em = std::exp(-(an - ax) * (an - ax));
    const double ep = std::exp(-(an + ax) * (an + ax));
    sum23 += (em + ep) / den;
    sum_diff += an * em * -std::expm1(-4.0 * an * ax) / den;
  }

  const double expx2 = exp_minus_square(x);
  const double coef1 = expx2 * erfcx(y) - kSumScale * y * expx2 * sum1;
  const double coef2 = kSumScale * x * expx2;
  const double xy = x * y;
  const double sin_xy = std::sin(xy);
  const double sin_2xy = std::sin(2.0 * xy);
  const double cos_2xy = std::cos(2.0 * xy);

  const double re = coef1 * cos_2xy + coef2 * sin_xy * sinc(xy, sin_xy) + 0.5 * kSumScale * y * sum23;
  const double im = coef2 * sinc(2.0 * xy, sin_2xy) - coef1 * sin_2xy
                    + 0.5 * kSumScale * std::copysign(sum_diff, x);
  return {re, im};
}

Complex faddeeva_upper(double x, double y)
{
  const double ax = std::abs(x);
  if (y > 7.0 || (ax > 6.0 && (y > 0.1 || (ax > 8.0 && y > 1e-10) || ax > 28.0))) {
    return continued_fraction(x, y);
  }
  return exponential_sums(x, y);
}

// exp(-z^2) without cancellation in the real part of the exponent.
Complex exp_minus_z2(Complex z)
{
  const double x = z.real();
  const double y = z.imag();
  const double re_exp = (y - x) * (y + x);
  const double phase = -2.0 * x * y;
  const double mag = std::exp(re_exp);
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

Complex erf_series(Complex z)
{
  const Complex z2 = z * z;
  Complex term = z;
  Complex sum = z;
  for (int n = 1; n < 60; ++n) {
    term *= -z2 / static_cast<double>(n);
    const Complex contrib = term / static_cast<double>(2 * n + 1);
    sum += contrib;
    if (std::abs(contrib) < 1e-17 * std::abs(sum)) {
      break;
    }
  }
  return kTwoOverSqrtPi * sum;
}

}  // namespace

double erfcx(double x)
{
  if (std::isnan(x)) {
    return x;
  }
  if (x < 0.0) {
    if (x < -26.7) {
      return std::numeric_limits<double>::infinity();
    }
    return 2.0 * exp_square(x) - erfcx(-x);
  }
  if (x < 12.0) {
    return std::erfc(x) * exp_square(x);
  }
  if (x > 5e7) {
    return kInvSqrtPi / x;
  }
  // erfc(x) = exp(-x^2)/sqrt(pi) / (x + 1/2/(x + 1/(x + 3/2/(x + ...))))
  double acc = x;
  for (int k = 40; k >= 1; --k) {
    acc = x + (0.5 * k) / acc;
  }
  return kInvSqrtPi / acc;
}

Complex faddeeva(Complex z)
{
  const double x = z.real();
  const double y = z.imag();
  if (std::isnan(x) || std::isnan(y)) {
    return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  }
  if (y >= 0.0) {
    return faddeeva_upper(x, y);
  }
  // w(z) = 2 exp(-z^2) - w(-z)
  const Complex reflected = faddeeva_upper(-x, -y);
  const Complex e = exp_minus_z2(z);
  return 2.0 * e - reflected;
}

Complex erf_complex(Complex z)
{
  const double x = z.real();
  const double y = z.imag();
  if (x == 0.0 && y == 0.0) {
    return z;
  }
  if (std::abs(z) < 1.0) {
    return erf_series(z);
  }
  if (x < 0.0) {
    return -erf_complex(-z);
  }
  // Re z >= 0, so iz lies in the closed upper half-plane.
  const Complex iz(-y, x);
  const double re_exp = (y - x) * (y + x);
  if (re_exp < -750.0) {
    return {1.0, 0.0};
  }
  const Complex wv = faddeeva_upper(iz.real(), iz.imag());
  Complex scaled;
  if (re_exp > 700.0) {
    scaled = std::exp(Complex(re_exp, -2.0 * x * y) + std::log(wv));
  } else {
    scaled = exp_minus_z2(z) * wv;
  }
  return 1.0 - scaled;
}

}  // namespace spatent
