#include "shrira/random_field.hpp"

#include <cmath>

#include "shrira/spectral_ops.hpp"

namespace shrira {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5348u};
  return std::mt19937_64(seq);
}

SpectralField random_field(const GridSpec& grid, const RandomFieldOptions& opts, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField raw(grid, false);
  for (Complex& c : raw.coeffs()) {
    const double re = normal(rng);
    const double im = normal(rng);
    c = Complex(re, im);
  }
  SpectralField out(grid, true);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  raw.for_each_mode([&](int m, int n, Complex z) {
    if (grid.is_nyquist(m, n)) return;
    if (opts.x_mean_zero && m == 0) return;
    if (opts.dealiased && !in_dealiased_band(grid, m, n)) return;
    const double amp = std::pow(1.0 + m * m + n * n, -0.5 * opts.sigma);
    out(m, n) = amp * inv_sqrt2 * (z + std::conj(raw(-m, -n)));
  });
  out(0, 0) = Complex(out(0, 0).real(), 0.0);
  return out;
}

SpectralField random_field(const GridSpec& grid, const RandomFieldOptions& opts, std::uint64_t seed) {
  auto rng = make_rng(seed);
  return random_field(grid, opts, rng);
}

SpectralField scaled_to_norm(const SpectralField& f, double s, double target) {
  const double norm = sobolev_norm(f, s);
  if (norm == 0.0) return f;
  return f * (target / norm);
}

}  // namespace shrira
