#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <new>
#include <tuple>

namespace shrira::detail {

template <class T>
FftwBuffer<T>::FftwBuffer(std::size_t n)
    : data_(static_cast<T*>(fftw_malloc(sizeof(T) * (n == 0 ? 1 : n)))), size_(n) {
  if (data_ == nullptr) throw std::bad_alloc();
  for (std::size_t i = 0; i < n; ++i) data_[i] = T{};
}

template <class T>
FftwBuffer<T>::~FftwBuffer() {
  fftw_free(data_);
}

template class FftwBuffer<double>;
template class FftwBuffer<Complex>;

namespace {

enum class Kind { kC2R, kR2C, kC2CBackward, kC2CForward };

struct PlanCache {
  std::mutex mutex;
  std::map<std::tuple<Kind, int, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

fftw_plan get_plan(Kind kind, int P, int Q) {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  auto key = std::make_tuple(kind, P, Q);
  if (auto it = c.plans.find(key); it != c.plans.end()) return it->second;

  const std::size_t nreal = static_cast<std::size_t>(P) * Q;
  const std::size_t nhalf = static_cast<std::size_t>(P) * (Q / 2 + 1);
  fftw_plan plan = nullptr;
  switch (kind) {
    case Kind::kC2R: {
      FftwBuffer<Complex> in(nhalf);
      FftwBuffer<double> out(nreal);
      plan = fftw_plan_dft_c2r_2d(P, Q, reinterpret_cast<fftw_complex*>(in.data()), out.data(),
                                  FFTW_ESTIMATE);
      break;
    }
    case Kind::kR2C: {
      FftwBuffer<double> in(nreal);
      FftwBuffer<Complex> out(nhalf);
      plan = fftw_plan_dft_r2c_2d(P, Q, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                  FFTW_ESTIMATE);
      break;
    }
    case Kind::kC2CBackward:
    case Kind::kC2CForward: {
      FftwBuffer<Complex> in(nreal);
      FftwBuffer<Complex> out(nreal);
      plan = fftw_plan_dft_2d(P, Q, reinterpret_cast<fftw_complex*>(in.data()),
                              reinterpret_cast<fftw_complex*>(out.data()),
                              kind == Kind::kC2CBackward ? FFTW_BACKWARD : FFTW_FORWARD,
                              FFTW_ESTIMATE);
      break;
    }
  }
  c.plans.emplace(key, plan);
  return plan;
}

}  // namespace

void inverse_real(FftwBuffer<Complex>& half, FftwBuffer<double>& out, int P, int Q) {
  fftw_execute_dft_c2r(get_plan(Kind::kC2R, P, Q), reinterpret_cast<fftw_complex*>(half.data()),
                       out.data());
}

void forward_real(FftwBuffer<double>& in, FftwBuffer<Complex>& out, int P, int Q) {
  fftw_execute_dft_r2c(get_plan(Kind::kR2C, P, Q), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void transform_complex(FftwBuffer<Complex>& in, FftwBuffer<Complex>& out, int P, int Q, int sign) {
  const Kind kind = sign > 0 ? Kind::kC2CBackward : Kind::kC2CForward;
  fftw_execute_dft(get_plan(kind, P, Q), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace shrira::detail
