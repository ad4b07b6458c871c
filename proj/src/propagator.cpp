#include "shrira/propagator.hpp"

#include <cmath>
#include <string>

#include "shrira/errors.hpp"
#include "shrira/quadrature.hpp"
#include "shrira/spectral_ops.hpp"

namespace shrira {

SpectralField propagate(const SpectralField& u0, double t) {
  if (t == 0.0) return u0;
  return u0.multiplied([t](int m, int n) {
    if (m == 0) return Complex(1.0, 0.0);
    const double phase = -t * sgn(m) * static_cast<double>(m * m + n * n);
    return Complex(std::cos(phase), std::sin(phase));
  });
}

SourceFn flux_source(std::function<SpectralField(double)> flux) {
  return [flux = std::move(flux)](double t) { return -1.0 * partial_x(flux(t)); };
}

SpectralField duhamel_step(const SpectralField& w, const SourceFn& source, double t0, double t1,
                           int quadrature_nodes) {
  if (!(t1 > t0)) {
    throw IntervalError("duhamel_step: need t1 > t0, got [" + std::to_string(t0) + ", " +
                        std::to_string(t1) + "]");
  }
  const QuadratureRule rule = gauss_legendre(quadrature_nodes);
  const double half = 0.5 * (t1 - t0);
  const double mid = 0.5 * (t1 + t0);
  SpectralField out = propagate(w, t1 - t0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double s = mid + half * rule.nodes[i];
    SpectralField term = propagate(source(s), t1 - s);
    term *= half * rule.weights[i];
    out += term;
  }
  return out;
}

}  // namespace shrira
