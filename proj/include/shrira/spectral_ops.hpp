#pragma once

#include <utility>
#include <vector>

#include "shrira/spectral_field.hpp"

namespace shrira {

using ModeList = std::vector<std::pair<FrequencyIndex, Complex>>;

constexpr int sgn(int v) { return (v > 0) - (v < 0); }

/// Field with exactly the listed coefficients. With `real`, missing Hermitian
/// partners are filled in as conjugates; an inconsistent partner, a non-real
/// self-conjugate mode, or a Nyquist mode throws.
SpectralField synthesize(const ModeList& modes, const GridSpec& grid, bool real = true);

/// Samples on the (os*modes_x) x (os*modes_y) collocation grid, row-major in x:
/// value[j * Py + k] = f(2 pi j / Px, 2 pi k / Py). Requires a real field.
std::vector<double> to_physical(const SpectralField& f, int oversample);
std::vector<double> to_physical(const SpectralField& f);

/// Complex samples, for fields without the real flag.
std::vector<Complex> to_physical_complex(const SpectralField& f, int oversample);

/// Inverse of to_physical at oversample 1: coefficients of the trigonometric
/// interpolant of the samples. Nyquist rows are zeroed.
SpectralField from_physical(std::span<const double> values, const GridSpec& grid);

SpectralField hilbert_x(const SpectralField& f);
SpectralField laplacian(const SpectralField& f);
SpectralField partial_x(const SpectralField& f);
SpectralField partial_y(const SpectralField& f);
SpectralField bessel_potential(const SpectralField& f, double s);

/// (sum |g(m,n)|^2 (1+m^2+n^2)^s)^{1/2}; s must be nonnegative.
double sobolev_norm(const SpectralField& f, double s);

/// Coefficient l^2 norm (sobolev_norm at s = 0).
double l2_norm(const SpectralField& f);

/// Coefficient inner product sum f(m,n) conj(g(m,n)).
Complex inner_product(const SpectralField& f, const SpectralField& g);

/// Max |f| over the oversampled collocation grid. This is a lower bound on the
/// supremum that converges as the oversampling grows; oversample must be >= 2.
double linf_norm(const SpectralField& f, int oversample);
double linf_norm(const SpectralField& f);

/// ||d_x f||_inf + ||d_y f||_inf.
double grad_linf_norm(const SpectralField& f, int oversample);
double grad_linf_norm(const SpectralField& f);

/// Truncation to |m| < modes_x/3, |n| < modes_y/3.
SpectralField dealias_truncate(const SpectralField& f);
bool in_dealiased_band(const GridSpec& grid, int m, int n);

/// Pseudospectral product on the modes_x x modes_y collocation grid. With
/// `dealias` the inputs and the result are truncated to the 2/3 band, which
/// makes the quadratic product alias-free.
SpectralField product(const SpectralField& f, const SpectralField& g, bool dealias = true);

/// True iff g(0,n) = 0 for every n (relative to the coefficient norm, 1e-14).
bool x_mean_zero(const SpectralField& f);

/// Field with the m = 0 row removed.
SpectralField remove_x_mean(const SpectralField& f);

}  // namespace shrira
