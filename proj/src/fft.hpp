#pragma once

// Thin FFTW wrapper used by the spectral operators. Plans are created once per
// (kind, shape) under a mutex; execution uses the new-array interface on
// fftw_malloc'd buffers so concurrent calls are safe.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace shrira::detail {

using Complex = std::complex<double>;

template <class T>
class FftwBuffer {
 public:
  explicit FftwBuffer(std::size_t n);
  ~FftwBuffer();
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  T* data() noexcept { return data_; }
  const T* data() const noexcept { return data_; }
  std::size_t size() const noexcept { return size_; }
  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }
  std::span<T> span() noexcept { return {data_, size_}; }

 private:
  T* data_;
  std::size_t size_;
};

/// half: P x (Q/2+1) Hermitian half-spectrum (destroyed). out: P x Q samples of
/// sum c e^{+i(...)} (unnormalized backward transform).
void inverse_real(FftwBuffer<Complex>& half, FftwBuffer<double>& out, int P, int Q);

/// in: P x Q samples (preserved). out: P x (Q/2+1) unnormalized forward transform.
void forward_real(FftwBuffer<double>& in, FftwBuffer<Complex>& out, int P, int Q);

/// Complex transform, sign = +1 (backward, synthesis) or -1 (forward).
void transform_complex(FftwBuffer<Complex>& in, FftwBuffer<Complex>& out, int P, int Q, int sign);

}  // namespace shrira::detail
