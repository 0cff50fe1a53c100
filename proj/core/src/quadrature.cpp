#include "spatent/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spatent {
namespace {

struct LegendreValue {
  double p;
  double dp;
};

// P_n(x) and P_n'(x) by the three-term recurrence.
LegendreValue legendre(std::size_t n, double x)
{
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = p1;
    p1 = pk;
  }
  const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t order, double a, double b)
{
  if (order == 0) {
    throw std::invalid_argument("gauss_legendre: order must be positive");
  }
  if (!(a < b)) {
    throw std::invalid_argument("gauss_legendre: requires a < b");
  }

  std::vector<double> x(order);
  std::vector<double> w(order);
  const std::size_t half = (order + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi's estimate of the i-th largest root, then Newton.
    const double theta = std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(order) + 0.5);
    double r = std::cos(theta);
    if (order % 2 == 1 && i == half - 1) {
      r = 0.0;
    }
    LegendreValue v{};
    for (int it = 0; it < 100; ++it) {
      if (order == 1) {
        v = {0.0, 1.0};
        break;
      }
      v = legendre(order, r);
      const double step = v.p / v.dp;
      r -= step;
      if (std::abs(step) < 1e-16) {
        v = legendre(order, r);
        break;
      }
    }
    const double wi = 2.0 / ((1.0 - r * r) * v.dp * v.dp);
    x[i] = -r;
    x[order - 1 - i] = r;
    w[i] = wi;
    w[order - 1 - i] = wi;
  }
  if (order % 2 == 1) {
    x[order / 2] = 0.0;
  }

  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double half_len = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < order; ++i) {
    rule.nodes[i] = mid + half_len * x[i];
    rule.weights[i] = half_len * w[i];
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t order, double a, double b)
{
  if (panels == 0) {
    throw std::invalid_argument("composite_gauss_legendre: panels must be positive");
  }
  const QuadratureRule base = gauss_legendre(order, -1.0, 1.0);
  if (!(a < b)) {
    throw std::invalid_argument("composite_gauss_legendre: requires a < b");
  }
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.reserve(panels * order);
  rule.weights.reserve(panels * order);
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + width * static_cast<double>(k);
    for (std::size_t i = 0; i < order; ++i) {
      rule.nodes.push_back(lo + 0.5 * width * (base.nodes[i] + 1.0));
      rule.weights.push_back(0.5 * width * base.weights[i]);
    }
  }
  return rule;
}

}  // namespace spatent
