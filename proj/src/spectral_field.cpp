#include "shrira/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shrira/errors.hpp"

namespace shrira {

SpectralField::SpectralField(const GridSpec& grid, bool real)
    : grid_(grid), real_(real), coeffs_(grid.size()) {}

Complex SpectralField::at(int m, int n) const {
  if (!grid_.contains(m, n)) {
    throw RangeError("frequency (" + std::to_string(m) + "," + std::to_string(n) +
                     ") outside the " + std::to_string(grid_.modes_x) + "x" +
                     std::to_string(grid_.modes_y) + " band");
  }
  return (*this)(m, n);
}

double SpectralField::l2_norm() const {
  double acc = 0.0;
  for (const auto& c : coeffs_) acc += std::norm(c);
  return std::sqrt(acc);
}

int SpectralField::band_x() const {
  int band = -1;
  for_each_mode([&](int m, int, Complex c) {
    if (c != Complex{}) band = std::max(band, std::abs(m));
  });
  return band;
}

int SpectralField::band_y() const {
  int band = -1;
  for_each_mode([&](int, int n, Complex c) {
    if (c != Complex{}) band = std::max(band, std::abs(n));
  });
  return band;
}

bool SpectralField::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex{}; });
}

bool SpectralField::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

double SpectralField::hermitian_defect() const {
  double defect = 0.0;
  for_each_mode([&](int m, int n, Complex c) {
    if (grid_.is_nyquist(m, n)) {
      defect = std::max(defect, std::abs(c));
    } else {
      defect = std::max(defect, std::abs((*this)(-m, -n) - std::conj(c)));
    }
  });
  return defect;
}

void SpectralField::zero_nyquist() {
  const int hx = grid_.half_x();
  const int hy = grid_.half_y();
  for (int n = -hy; n < hy; ++n) (*this)(-hx, n) = Complex{};
  for (int m = -hx; m < hx; ++m) (*this)(m, -hy) = Complex{};
}

SpectralField SpectralField::as_complex() const {
  SpectralField out = *this;
  out.real_ = false;
  return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!grid_.same_modes(other.grid_)) throw DimensionError("field grids differ in +=");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  real_ = real_ && other.real_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!grid_.same_modes(other.grid_)) throw DimensionError("field grids differ in -=");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  real_ = real_ && other.real_;
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

bool SpectralField::identical(const SpectralField& other) const {
  // Value equality per coefficient, so -0.0 == 0.0.
  return grid_.same_modes(other.grid_) && real_ == other.real_ && coeffs_ == other.coeffs_;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }
SpectralField operator*(SpectralField a, double s) { return a *= s; }

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  if (!a.grid().same_modes(b.grid())) throw DimensionError("max_abs_diff: grids differ");
  double d = 0.0;
  auto ca = a.coeffs();
  auto cb = b.coeffs();
  for (std::size_t k = 0; k < ca.size(); ++k) d = std::max(d, std::abs(ca[k] - cb[k]));
  return d;
}

SpectralField regrid(const SpectralField& f, const GridSpec& target) {
  SpectralField out(target, f.is_real());
  f.for_each_mode([&](int m, int n, Complex c) {
    if (target.contains(m, n) && !(f.is_real() && target.is_nyquist(m, n))) out(m, n) = c;
  });
  return out;
}

GridSpec compact_grid(const SpectralField& f, int os) {
  auto fit = [](int band) {
    int modes = 4;
    while (modes / 2 <= band) modes *= 2;
    return modes;
  };
  return GridSpec(fit(f.band_x()), fit(f.band_y()), os);
}

}  // namespace shrira
