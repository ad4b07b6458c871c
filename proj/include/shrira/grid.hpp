#pragma once

#include <cstddef>
#include <cstdint>

namespace shrira {

/// Fourier normalization convention. Only one is supported:
/// f(x,y) = sum_{m,n} g(m,n) e^{i(mx+ny)},  g(m,n) = (2 pi)^{-2} \int\int f e^{-i(mx+ny)}.
enum class Normalization : std::uint8_t { kCoefficientMean = 0 };

/// Discretization of T^2 = R^2 / (2 pi Z)^2.
///
/// A field on this grid retains m in [-modes_x/2, modes_x/2) and
/// n in [-modes_y/2, modes_y/2). Both mode counts are powers of two so that
/// dyadic shells align with the truncation.
struct GridSpec {
  int modes_x = 64;
  int modes_y = 64;
  int oversample = 4;
  Normalization normalization = Normalization::kCoefficientMean;

  GridSpec() = default;
  GridSpec(int mx, int my, int os = 4);

  /// Square grid.
  static GridSpec square(int modes, int os = 4) { return GridSpec(modes, modes, os); }

  int half_x() const { return modes_x / 2; }
  int half_y() const { return modes_y / 2; }
  std::size_t size() const {
    return static_cast<std::size_t>(modes_x) * static_cast<std::size_t>(modes_y);
  }

  bool contains(int m, int n) const {
    return m >= -half_x() && m < half_x() && n >= -half_y() && n < half_y();
  }
  bool is_nyquist(int m, int n) const { return m == -half_x() || n == -half_y(); }

  /// Same mode counts (oversample is an evaluation setting and does not matter).
  bool same_modes(const GridSpec& other) const {
    return modes_x == other.modes_x && modes_y == other.modes_y;
  }

  bool operator==(const GridSpec&) const = default;
};

struct FrequencyIndex {
  int m = 0;
  int n = 0;
  bool operator==(const FrequencyIndex&) const = default;
};

bool is_power_of_two(long long v);

}  // namespace shrira
