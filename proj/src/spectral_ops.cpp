#include "shrira/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <string>

#include "fft.hpp"
#include "shrira/errors.hpp"

namespace shrira {

namespace {

using detail::FftwBuffer;

int wrap(int k, int period) {
  const int r = k % period;
  return r < 0 ? r + period : r;
}

std::string mode_str(int m, int n) {
  return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

void require_same_grid(const SpectralField& f, const SpectralField& g, const char* op) {
  if (!f.grid().same_modes(g.grid())) {
    throw DimensionError(std::string(op) + ": grid mismatch " + std::to_string(f.grid().modes_x) +
                         "x" + std::to_string(f.grid().modes_y) + " vs " +
                         std::to_string(g.grid().modes_x) + "x" +
                         std::to_string(g.grid().modes_y));
  }
}

}  // namespace

SpectralField synthesize(const ModeList& modes, const GridSpec& grid, bool real) {
  SpectralField out(grid, real);
  std::map<std::pair<int, int>, Complex> given;
  for (const auto& [idx, value] : modes) {
    if (!grid.contains(idx.m, idx.n)) {
      throw RangeError("synthesize: frequency " + mode_str(idx.m, idx.n) + " outside the " +
                       std::to_string(grid.modes_x) + "x" + std::to_string(grid.modes_y) +
                       " band");
    }
    if (real && grid.is_nyquist(idx.m, idx.n)) {
      throw RangeError("synthesize: Nyquist frequency " + mode_str(idx.m, idx.n) +
                       " is not representable in a real field");
    }
    if (!given.emplace(std::make_pair(idx.m, idx.n), value).second) {
      throw RangeError("synthesize: frequency " + mode_str(idx.m, idx.n) + " given twice");
    }
  }
  for (const auto& [key, value] : given) {
    const auto [m, n] = key;
    out(m, n) = value;
    if (!real) continue;
    const Complex partner = std::conj(value);
    if (auto it = given.find({-m, -n}); it != given.end()) {
      const double tol = 1e-14 * std::max(1.0, std::abs(value));
      if (std::abs(it->second - partner) > tol) {
        throw SymmetryError("synthesize: coefficient at " + mode_str(-m, -n) +
                            " is not the conjugate of " + mode_str(m, n));
      }
    } else {
      out(-m, -n) = partner;
    }
  }
  return out;
}

std::vector<double> to_physical(const SpectralField& f, int oversample) {
  if (!f.is_real()) throw PreconditionError("to_physical: field does not carry the real flag");
  if (oversample < 1) throw PreconditionError("to_physical: oversample must be >= 1");
  const GridSpec& g = f.grid();
  const int P = oversample * g.modes_x;
  const int Q = oversample * g.modes_y;
  const int Qh = Q / 2 + 1;
  FftwBuffer<Complex> half(static_cast<std::size_t>(P) * Qh);
  for (int m = -g.half_x() + 1; m < g.half_x(); ++m) {
    const std::size_t row = static_cast<std::size_t>(wrap(m, P)) * Qh;
    for (int n = 0; n < g.half_y(); ++n) half[row + n] = f(m, n);
  }
  FftwBuffer<double> out(static_cast<std::size_t>(P) * Q);
  detail::inverse_real(half, out, P, Q);
  return {out.data(), out.data() + out.size()};
}

std::vector<double> to_physical(const SpectralField& f) {
  return to_physical(f, f.grid().oversample);
}

std::vector<Complex> to_physical_complex(const SpectralField& f, int oversample) {
  if (oversample < 1) throw PreconditionError("to_physical_complex: oversample must be >= 1");
  const GridSpec& g = f.grid();
  const int P = oversample * g.modes_x;
  const int Q = oversample * g.modes_y;
  FftwBuffer<Complex> in(static_cast<std::size_t>(P) * Q);
  f.for_each_mode([&](int m, int n, Complex c) {
    in[static_cast<std::size_t>(wrap(m, P)) * Q + wrap(n, Q)] = c;
  });
  FftwBuffer<Complex> out(in.size());
  detail::transform_complex(in, out, P, Q, +1);
  return {out.data(), out.data() + out.size()};
}

SpectralField from_physical(std::span<const double> values, const GridSpec& grid) {
  const int P = grid.modes_x;
  const int Q = grid.modes_y;
  if (values.size() != static_cast<std::size_t>(P) * Q) {
    throw DimensionError("from_physical: expected " + std::to_string(P * Q) + " samples, got " +
                         std::to_string(values.size()));
  }
  const int Qh = Q / 2 + 1;
  FftwBuffer<double> in(values.size());
  std::copy(values.begin(), values.end(), in.data());
  FftwBuffer<Complex> out(static_cast<std::size_t>(P) * Qh);
  detail::forward_real(in, out, P, Q);
  const double scale = 1.0 / (static_cast<double>(P) * Q);
  SpectralField f(grid, true);
  for (int m = -grid.half_x() + 1; m < grid.half_x(); ++m) {
    for (int n = -grid.half_y() + 1; n < grid.half_y(); ++n) {
      if (n >= 0) {
        f(m, n) = out[static_cast<std::size_t>(wrap(m, P)) * Qh + n] * scale;
      } else {
        f(m, n) = std::conj(out[static_cast<std::size_t>(wrap(-m, P)) * Qh + (-n)]) * scale;
      }
    }
  }
  // The n = 0 column of the half spectrum is Hermitian only up to rounding;
  // average the pairs so the result is exactly Hermitian.
  for (int m = 1; m < grid.half_x(); ++m) {
    const Complex avg = 0.5 * (f(m, 0) + std::conj(f(-m, 0)));
    f(m, 0) = avg;
    f(-m, 0) = std::conj(avg);
  }
  f(0, 0) = Complex(f(0, 0).real(), 0.0);
  return f;
}

SpectralField hilbert_x(const SpectralField& f) {
  return f.multiplied([](int m, int) { return Complex(0.0, -static_cast<double>(sgn(m))); });
}

SpectralField laplacian(const SpectralField& f) {
  return f.multiplied([](int m, int n) { return Complex(-static_cast<double>(m * m + n * n), 0.0); });
}

SpectralField partial_x(const SpectralField& f) {
  return f.multiplied([](int m, int) { return Complex(0.0, static_cast<double>(m)); });
}

SpectralField partial_y(const SpectralField& f) {
  return f.multiplied([](int, int n) { return Complex(0.0, static_cast<double>(n)); });
}

SpectralField bessel_potential(const SpectralField& f, double s) {
  return f.multiplied([s](int m, int n) {
    return Complex(std::pow(1.0 + m * m + n * n, 0.5 * s), 0.0);
  });
}

double sobolev_norm(const SpectralField& f, double s) {
  if (!(s >= 0.0)) {
    throw PreconditionError("sobolev_norm: s must be >= 0 (got " + std::to_string(s) +
                            "); use bessel_potential for negative orders");
  }
  double acc = 0.0;
  f.for_each_mode([&](int m, int n, Complex c) {
    if (c != Complex{}) acc += std::norm(c) * std::pow(1.0 + m * m + n * n, s);
  });
  return std::sqrt(acc);
}

double l2_norm(const SpectralField& f) { return f.l2_norm(); }

Complex inner_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g, "inner_product");
  Complex acc{};
  auto a = f.coeffs();
  auto b = g.coeffs();
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * std::conj(b[k]);
  return acc;
}

double linf_norm(const SpectralField& f, int oversample) {
  if (oversample < 2) {
    throw PreconditionError("linf_norm: oversample must be >= 2, got " + std::to_string(oversample));
  }
  double mx = 0.0;
  if (f.is_real()) {
    // Same synthesis as to_physical, on per-thread buffers: this sits in the
    // inner loop of the time quadratures and large allocations dominate there.
    struct Scratch {
      int P = 0, Q = 0;
      std::unique_ptr<FftwBuffer<Complex>> half;
      std::unique_ptr<FftwBuffer<double>> out;
    };
    thread_local Scratch sc;
    const GridSpec& g = f.grid();
    const int P = oversample * g.modes_x;
    const int Q = oversample * g.modes_y;
    const int Qh = Q / 2 + 1;
    if (sc.P != P || sc.Q != Q) {
      sc.half = std::make_unique<FftwBuffer<Complex>>(static_cast<std::size_t>(P) * Qh);
      sc.out = std::make_unique<FftwBuffer<double>>(static_cast<std::size_t>(P) * Q);
      sc.P = P;
      sc.Q = Q;
    } else {
      std::fill(sc.half->data(), sc.half->data() + sc.half->size(), Complex{});
    }
    auto& half = *sc.half;
    for (int m = -g.half_x() + 1; m < g.half_x(); ++m) {
      const std::size_t row = static_cast<std::size_t>(wrap(m, P)) * Qh;
      for (int n = 0; n < g.half_y(); ++n) half[row + n] = f(m, n);
    }
    detail::inverse_real(half, *sc.out, P, Q);
    for (double v : sc.out->span()) mx = std::max(mx, std::abs(v));
  } else {
    for (Complex v : to_physical_complex(f, oversample)) mx = std::max(mx, std::abs(v));
  }
  return mx;
}

double linf_norm(const SpectralField& f) { return linf_norm(f, f.grid().oversample); }

double grad_linf_norm(const SpectralField& f, int oversample) {
  return linf_norm(partial_x(f), oversample) + linf_norm(partial_y(f), oversample);
}

double grad_linf_norm(const SpectralField& f) { return grad_linf_norm(f, f.grid().oversample); }

bool in_dealiased_band(const GridSpec& grid, int m, int n) {
  return 3 * std::abs(m) < grid.modes_x && 3 * std::abs(n) < grid.modes_y;
}

SpectralField dealias_truncate(const SpectralField& f) {
  const GridSpec grid = f.grid();
  return f.restricted([&](int m, int n) { return in_dealiased_band(grid, m, n); });
}

SpectralField product(const SpectralField& f, const SpectralField& g, bool dealias) {
  require_same_grid(f, g, "product");
  const SpectralField a = dealias ? dealias_truncate(f) : f;
  const SpectralField b = dealias ? dealias_truncate(g) : g;
  const GridSpec& grid = f.grid();
  SpectralField out(grid, true);
  if (a.is_real() && b.is_real()) {
    std::vector<double> pa = to_physical(a, 1);
    const std::vector<double> pb = to_physical(b, 1);
    for (std::size_t k = 0; k < pa.size(); ++k) pa[k] *= pb[k];
    out = from_physical(pa, grid);
  } else {
    const int P = grid.modes_x;
    const int Q = grid.modes_y;
    const auto pa = to_physical_complex(a, 1);
    const auto pb = to_physical_complex(b, 1);
    FftwBuffer<Complex> in(pa.size());
    for (std::size_t k = 0; k < pa.size(); ++k) in[k] = pa[k] * pb[k];
    FftwBuffer<Complex> spec(in.size());
    detail::transform_complex(in, spec, P, Q, -1);
    const double scale = 1.0 / (static_cast<double>(P) * Q);
    out = SpectralField(grid, false);
    for (int m = -grid.half_x(); m < grid.half_x(); ++m) {
      for (int n = -grid.half_y(); n < grid.half_y(); ++n) {
        out(m, n) = spec[static_cast<std::size_t>(wrap(m, P)) * Q + wrap(n, Q)] * scale;
      }
    }
  }
  return dealias ? dealias_truncate(out) : out;
}

bool x_mean_zero(const SpectralField& f) {
  const double tol = 1e-14 * f.l2_norm();
  for (int n = -f.grid().half_y(); n < f.grid().half_y(); ++n) {
    if (std::abs(f(0, n)) > tol) return false;
  }
  return true;
}

SpectralField remove_x_mean(const SpectralField& f) {
  return f.restricted([](int m, int) { return m != 0; });
}

}  // namespace shrira
