#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spatent {

/// Nodes and weights for integrating over a finite interval.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }

  /// Sum of w_i f(x_i).
  template <class F>
  [[nodiscard]] auto integrate(F&& f) const
  {
    using R = decltype(f(0.0));
    R acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      acc += weights[i] * f(nodes[i]);
    }
    return acc;
  }
};

/// Gauss-Legendre rule of the given order on [a, b].
/// Exact for polynomials of degree <= 2*order - 1.
/// Throws std::invalid_argument if order == 0 or a >= b.
QuadratureRule gauss_legendre(std::size_t order, double a, double b);

/// Composite rule: `panels` equal sub-intervals, each with an
/// order-`order` Gauss-Legendre rule.
QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t order, double a, double b);

}  // namespace spatent
