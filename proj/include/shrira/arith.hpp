#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace shrira::arith {

/// a/q with 1 <= q <= Q and |alpha - a/q| < 1/(q Q); gcd(|a|, q) = 1 when a != 0.
struct RationalApprox {
  std::int64_t a = 0;
  std::int64_t q = 1;
  double alpha = 0.0;
  double Q = 1.0;

  double error() const;
  /// Checks the invariants above in floating point.
  bool valid() const;
};

/// Rational approximation with denominator at most Q (Q >= 1). Uses the last
/// continued-fraction convergent with denominator <= Q; when rounding breaks
/// the bound and Q <= 1e4, falls back to exhaustive search over q.
RationalApprox dirichlet_approx(double alpha, double Q);

/// Smallest-q valid approximation by trying every q <= Q. Reference oracle.
RationalApprox dirichlet_exhaustive(double alpha, double Q);

/// f(z) = alpha z^2 + beta z.
struct RealQuadratic {
  double alpha = 0.0;
  double beta = 0.0;
};

/// S(f) = sum_{n=1}^{N} exp(2 pi i f(n)), Kahan-compensated.
std::complex<double> weyl_sum(const RealQuadratic& f, std::int64_t N);

/// N^{1+eps} (1/N + 1/q + q/N^2)^{1/2}, the degree-2 Weyl bound with unit constant.
double weyl_bound(std::int64_t N, std::int64_t q, double eps);

/// weyl_bound with q from dirichlet_approx(f.alpha, Q). Throws PreconditionError
/// if the approximant violates |alpha - a/q| <= 1/q^2.
double weyl_bound_rhs(const RealQuadratic& f, std::int64_t N, double eps, double Q);

enum class PoissonFamily { kGaussian, kBump };

std::string to_string(PoissonFamily family);
PoissonFamily parse_poisson_family(const std::string& name);

struct PoissonResult {
  /// sum_{|m| <= T} fhat(2 pi m), fhat(xi) = int f(x) e^{-i x xi} dx.
  double lhs = 0.0;
  /// sum_{|m| <= T} f(m).
  double rhs = 0.0;
  /// Bound on the omitted |m| > T terms of both sums.
  double tail_bound = 0.0;
};

/// Truncated sides of sum fhat(2 pi m) = sum f(m) for a 1-D Schwartz function.
/// Gaussian: f(x) = exp(-x^2 / (2 sigma^2)), transform in closed form.
/// Bump: f(x) = psi0(x / sigma), transform by quadrature.
PoissonResult poisson_check(PoissonFamily family, double sigma, int truncation);

}  // namespace shrira::arith
