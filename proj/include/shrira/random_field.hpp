#pragma once

#include <cstdint>
#include <random>

#include "shrira/spectral_field.hpp"

namespace shrira {

/// Independent stream for (seed, stream index); used for per-sample RNGs.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

struct RandomFieldOptions {
  /// Radial decay exponent: |g(m,n)| ~ (1+m^2+n^2)^{-sigma/2}.
  double sigma = 2.0;
  /// Remove the m = 0 row.
  bool x_mean_zero = false;
  /// Restrict to the 2/3-rule band.
  bool dealiased = false;
};

/// Real field with complex Gaussian coefficients shaped by the decay profile,
/// Hermitian-symmetrized, Nyquist rows zero.
SpectralField random_field(const GridSpec& grid, const RandomFieldOptions& opts, std::mt19937_64& rng);
SpectralField random_field(const GridSpec& grid, const RandomFieldOptions& opts, std::uint64_t seed);

/// f scaled so that sobolev_norm(f, s) == target (zero stays zero).
SpectralField scaled_to_norm(const SpectralField& f, double s, double target);

}  // namespace shrira
