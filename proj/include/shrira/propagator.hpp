#pragma once

#include <functional>

#include "shrira/spectral_field.hpp"

namespace shrira {

/// Free group W(t): coefficient (m,n) times exp(-i t sgn(m) (m^2+n^2)).
/// The m = 0 row is left unchanged.
SpectralField propagate(const SpectralField& u0, double t);

/// Time-dependent source S(t) for w_t + H Lap w = S(t).
using SourceFn = std::function<SpectralField(double)>;

/// S = -d_x F for a flux provider F(t), the form of the Duhamel formula for
/// w_t + H Lap w + d_x F(w) = 0.
SourceFn flux_source(std::function<SpectralField(double)> flux);

/// w(t1) = W(t1 - t0) w(t0) + int_{t0}^{t1} W(t1 - s) S(s) ds with an
/// n-node Gauss-Legendre rule for the integral.
SpectralField duhamel_step(const SpectralField& w, const SourceFn& source, double t0, double t1,
                           int quadrature_nodes = 8);

}  // namespace shrira
