#include "shrira/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "shrira/errors.hpp"

namespace shrira {

DyadicIndex DyadicIndex::power(int k) {
  if (k < 0 || k > 40) throw RangeError("dyadic exponent out of range: " + std::to_string(k));
  return DyadicIndex(false, k);
}

DyadicIndex DyadicIndex::from_value(long long value) {
  if (value == 0) return zero();
  if (!is_power_of_two(value)) {
    throw RangeError("dyadic index must be 0 or a power of two, got " + std::to_string(value));
  }
  int k = 0;
  while ((1LL << k) < value) ++k;
  return power(k);
}

bool in_q_band(int k, int abs_freq) {
  if (k == 0) return abs_freq == 0;
  return abs_freq >= (1 << (k - 1)) && abs_freq < (1 << k);
}

bool in_q_tilde_band(int k, int abs_freq) {
  if (k < 0) return false;
  return abs_freq < (1 << k);
}

bool in_shell(const DyadicIndex& N, int m, int n) {
  const int am = std::abs(m);
  const int an = std::abs(n);
  if (N.is_zero()) return am == 0 && an == 0;
  const int k = N.exponent();
  if (k == 0) return false;
  return (in_q_tilde_band(k, am) && in_q_band(k, an)) ||
         (in_q_tilde_band(k - 1, an) && in_q_band(k, am));
}

SpectralField q_x(const SpectralField& f, int k) {
  return f.restricted([k](int m, int) { return in_q_band(k, std::abs(m)); });
}

SpectralField q_y(const SpectralField& f, int k) {
  return f.restricted([k](int, int n) { return in_q_band(k, std::abs(n)); });
}

SpectralField q_x_tilde(const SpectralField& f, int k) {
  return f.restricted([k](int m, int) { return in_q_tilde_band(k, std::abs(m)); });
}

SpectralField q_y_tilde(const SpectralField& f, int k) {
  return f.restricted([k](int, int n) { return in_q_tilde_band(k, std::abs(n)); });
}

DyadicIndex max_shell(const GridSpec& grid) {
  return DyadicIndex::from_value(std::max(grid.half_x(), grid.half_y()));
}

std::vector<DyadicIndex> shells(const GridSpec& grid) {
  std::vector<DyadicIndex> out{DyadicIndex::zero()};
  const int kmax = max_shell(grid).exponent();
  for (int k = 0; k <= kmax; ++k) out.push_back(DyadicIndex::power(k));
  return out;
}

SpectralField p_n(const SpectralField& f, const DyadicIndex& N) {
  const DyadicIndex top = max_shell(f.grid());
  if (!N.is_zero() && N.value() > top.value()) {
    throw RangeError("p_n: N = " + std::to_string(N.value()) + " exceeds the grid band (max " +
                     std::to_string(top.value()) + ")");
  }
  return f.restricted([&N](int m, int n) { return in_shell(N, m, n); });
}

double equivalent_norm(const SpectralField& f, double s) {
  double acc = 0.0;
  for (const DyadicIndex& N : shells(f.grid())) {
    const double part = p_n(f, N).l2_norm();
    acc += std::pow(N.weight(), 2.0 * s) * part * part;
  }
  return std::sqrt(acc);
}

}  // namespace shrira
