#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "shrira/grid.hpp"

namespace shrira {

using Complex = std::complex<double>;

/// Truncated Fourier coefficients of a function on T^2.
///
/// Storage is row-major over m (ascending from -modes_x/2), then n. When the
/// real flag is set the coefficients are Hermitian, g(-m,-n) = conj(g(m,n)),
/// and the Nyquist rows m = -modes_x/2, n = -modes_y/2 are kept at zero.
class SpectralField {
 public:
  SpectralField() : SpectralField(GridSpec::square(2)) {}
  explicit SpectralField(const GridSpec& grid, bool real = true);

  const GridSpec& grid() const noexcept { return grid_; }
  bool is_real() const noexcept { return real_; }

  std::size_t index(int m, int n) const noexcept {
    return static_cast<std::size_t>(m + grid_.half_x()) * static_cast<std::size_t>(grid_.modes_y) +
           static_cast<std::size_t>(n + grid_.half_y());
  }

  Complex operator()(int m, int n) const noexcept { return coeffs_[index(m, n)]; }
  Complex& operator()(int m, int n) noexcept { return coeffs_[index(m, n)]; }

  /// Range-checked read; out-of-band indices are an error.
  Complex at(int m, int n) const;

  /// Coefficient of the represented function; zero outside the retained band.
  Complex coefficient(int m, int n) const noexcept {
    return grid_.contains(m, n) ? (*this)(m, n) : Complex{};
  }

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }

  template <class Fn>
  void for_each_mode(Fn&& fn) const {
    std::size_t k = 0;
    for (int m = -grid_.half_x(); m < grid_.half_x(); ++m) {
      for (int n = -grid_.half_y(); n < grid_.half_y(); ++n, ++k) {
        fn(m, n, coeffs_[k]);
      }
    }
  }

  /// New field with coefficient (m,n) multiplied by mult(m,n). The multiplier
  /// must satisfy mult(-m,-n) = conj(mult(m,n)) for real fields.
  template <class Mult>
  SpectralField multiplied(Mult&& mult) const {
    SpectralField out(grid_, real_);
    std::size_t k = 0;
    for (int m = -grid_.half_x(); m < grid_.half_x(); ++m) {
      for (int n = -grid_.half_y(); n < grid_.half_y(); ++n, ++k) {
        out.coeffs_[k] = coeffs_[k] * mult(m, n);
      }
    }
    if (real_) out.zero_nyquist();
    return out;
  }

  /// Keep the coefficients where keep(m,n) is true, zero elsewhere.
  template <class Pred>
  SpectralField restricted(Pred&& keep) const {
    SpectralField out(grid_, real_);
    std::size_t k = 0;
    for (int m = -grid_.half_x(); m < grid_.half_x(); ++m) {
      for (int n = -grid_.half_y(); n < grid_.half_y(); ++n, ++k) {
        if (keep(m, n)) out.coeffs_[k] = coeffs_[k];
      }
    }
    return out;
  }

  /// Euclidean norm of the coefficient array.
  double l2_norm() const;

  /// Largest |m| (resp. |n|) carrying a nonzero coefficient; -1 for the zero field.
  int band_x() const;
  int band_y() const;

  bool is_zero() const;
  bool all_finite() const;

  /// Max |g(-m,-n) - conj(g(m,n))| over non-Nyquist modes plus max |Nyquist|.
  double hermitian_defect() const;

  void zero_nyquist();

  /// Drops the real flag (the data are unchanged).
  SpectralField as_complex() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

  /// Same grid, flag and coefficient values (exact comparison).
  bool identical(const SpectralField& other) const;

 private:
  GridSpec grid_;
  bool real_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);
SpectralField operator*(SpectralField a, double s);

/// Max |a(m,n) - b(m,n)| over the common grid.
double max_abs_diff(const SpectralField& a, const SpectralField& b);

/// Same field embedded in (or truncated to) a grid with different mode counts.
/// Modes outside the target band are dropped; the real flag is preserved.
SpectralField regrid(const SpectralField& f, const GridSpec& target);

/// Smallest power-of-two grid (at least 4x4) that holds the support of f
/// without touching the Nyquist rows, with oversample `os`.
GridSpec compact_grid(const SpectralField& f, int os);

}  // namespace shrira
