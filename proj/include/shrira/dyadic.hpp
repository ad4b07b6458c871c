#pragma once

#include <vector>

#include "shrira/spectral_field.hpp"

namespace shrira {

/// Element of {0, 1, 2, 4, ..., 2^k, ...}.
class DyadicIndex {
 public:
  static DyadicIndex zero() { return DyadicIndex(true, 0); }
  static DyadicIndex power(int k);
  /// Accepts 0 or an exact power of two.
  static DyadicIndex from_value(long long value);

  bool is_zero() const noexcept { return zero_; }
  /// Exponent k for N = 2^k; meaningless when is_zero().
  int exponent() const noexcept { return k_; }
  long long value() const noexcept { return zero_ ? 0 : (1LL << k_); }
  /// max(1, N), the weight base in the dyadic norm.
  double weight() const noexcept { return zero_ ? 1.0 : static_cast<double>(value()); }

  bool operator==(const DyadicIndex&) const = default;

 private:
  DyadicIndex(bool zero, int k) : zero_(zero), k_(k) {}
  bool zero_;
  int k_;
};

/// |m| (or |n|) in the band of Q^k: [2^{k-1}, 2^k) for k >= 1, {0} for k = 0.
bool in_q_band(int k, int abs_freq);
/// |m| < 2^k, the band of the partial sum Q~^k; empty for k < 0.
bool in_q_tilde_band(int k, int abs_freq);

/// Exact membership of (m,n) in the support of P~_N.
///
/// For N = 2^k, k >= 1 this is Q~_x^k Q_y^k + Q~_y^{k-1} Q_x^k, i.e. the
/// square annulus 2^{k-1} <= max(|m|,|n|) < 2^k. For N = 1 the same formula
/// reproduces the N = 0 projection onto (0,0); the shell is taken to be empty
/// so that the shells partition Z^2.
bool in_shell(const DyadicIndex& N, int m, int n);

SpectralField q_x(const SpectralField& f, int k);
SpectralField q_y(const SpectralField& f, int k);
SpectralField q_x_tilde(const SpectralField& f, int k);
SpectralField q_y_tilde(const SpectralField& f, int k);

/// Largest dyadic index whose shell meets the grid band.
DyadicIndex max_shell(const GridSpec& grid);

/// 0, 1, 2, 4, ..., max_shell(grid).
std::vector<DyadicIndex> shells(const GridSpec& grid);

/// P~_N f. Throws RangeError when N exceeds max_shell(grid).
SpectralField p_n(const SpectralField& f, const DyadicIndex& N);

/// (sum_N max(1,N)^{2s} ||P~_N f||^2)^{1/2} with coefficient l^2 norms.
double equivalent_norm(const SpectralField& f, double s);

}  // namespace shrira
