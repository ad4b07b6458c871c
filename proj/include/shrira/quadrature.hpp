#pragma once

#include <vector>

namespace shrira {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Composite Gauss-Legendre rule on [a, b]: `panels` equal panels with
/// `per_panel` nodes each.
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int per_panel);

}  // namespace shrira
