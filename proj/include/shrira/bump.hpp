#pragma once

namespace shrira {

/// C^infinity step: 0 for t <= 0, 1 for t >= 1, h(t) / (h(t) + h(1-t)) between,
/// with h(t) = exp(-1/t).
double smooth_step(double t);

/// Even cutoff psi0: R -> [0,1], equal to 1 on [-1,1] and 0 outside (-2,2).
double bump_psi0(double x);

/// Radial profile rho: 1 on [0, 1/2), 0 on (1, inf); rho(r) = psi0(2r).
double bump_rho(double r);

/// Function-object form of psi0 for code that takes the cutoff as a value.
struct BumpPsi0 {
  double operator()(double x) const { return bump_psi0(x); }
};

}  // namespace shrira
