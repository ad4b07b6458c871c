#include "shrira/arith.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "shrira/bump.hpp"
#include "shrira/errors.hpp"

namespace shrira::arith {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class KahanSum {
 public:
  void add(double v) {
    const double y = v - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

RationalApprox make(std::int64_t a, std::int64_t q, double alpha, double Q) {
  const std::int64_t g = std::gcd(a < 0 ? -a : a, q);
  if (a != 0 && g > 1) {
    a /= g;
    q /= g;
  }
  if (a == 0) q = 1;
  return RationalApprox{a, q, alpha, Q};
}

}  // namespace

double RationalApprox::error() const {
  const long double diff = static_cast<long double>(alpha) -
                           static_cast<long double>(a) / static_cast<long double>(q);
  return static_cast<double>(std::fabs(diff));
}

bool RationalApprox::valid() const {
  if (q < 1 || static_cast<double>(q) > Q) return false;
  if (a != 0 && std::gcd(a < 0 ? -a : a, q) != 1) return false;
  return error() * static_cast<double>(q) * Q < 1.0;
}

RationalApprox dirichlet_exhaustive(double alpha, double Q) {
  if (!(Q >= 1.0)) throw PreconditionError("dirichlet: Q must be >= 1");
  const auto qmax = static_cast<std::int64_t>(std::floor(Q));
  for (std::int64_t q = 1; q <= qmax; ++q) {
    const auto a = static_cast<std::int64_t>(std::llround(alpha * static_cast<double>(q)));
    for (std::int64_t cand : {a, a - 1, a + 1}) {
      RationalApprox r = make(cand, q, alpha, Q);
      if (r.q == q && r.valid()) return r;
    }
  }
  // Unreachable for finite alpha: Dirichlet's theorem guarantees a solution.
  throw DomainError("dirichlet: exhaustive search found no approximant");
}

RationalApprox dirichlet_approx(double alpha, double Q) {
  if (!(Q >= 1.0)) throw PreconditionError("dirichlet: Q must be >= 1, got " + std::to_string(Q));
  if (!std::isfinite(alpha)) throw PreconditionError("dirichlet: alpha must be finite");

  // Convergents p_k/q_k of the continued fraction of alpha.
  long double x = alpha;
  long double a0 = std::floor(x);
  std::int64_t p_prev = 1, q_prev = 0;
  std::int64_t p = static_cast<std::int64_t>(a0), q = 1;
  long double frac = x - a0;
  for (int iter = 0; iter < 64; ++iter) {
    if (frac < 1e-18L) break;
    x = 1.0L / frac;
    const long double ak = std::floor(x);
    frac = x - ak;
    if (ak > 1e18L) break;
    const auto a = static_cast<std::int64_t>(ak);
    const long double q_next = static_cast<long double>(a) * q + q_prev;
    if (q_next > static_cast<long double>(Q)) break;
    const std::int64_t p_next = a * p + p_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = static_cast<std::int64_t>(q_next);
  }
  RationalApprox r = make(p, q, alpha, Q);
  if (r.valid()) return r;
  if (Q <= 1e4) return dirichlet_exhaustive(alpha, Q);
  throw DomainError("dirichlet: continued fraction lost precision for alpha = " +
                    std::to_string(alpha) + ", Q = " + std::to_string(Q));
}

std::complex<double> weyl_sum(const RealQuadratic& f, std::int64_t N) {
  if (N < 0) throw PreconditionError("weyl_sum: N must be >= 0");
  // Only the fractional parts of alpha and beta matter; reduce them first so
  // the phase stays accurate for large n.
  const double alpha = f.alpha - std::floor(f.alpha);
  const double beta = f.beta - std::floor(f.beta);
  KahanSum re;
  KahanSum im;
  for (std::int64_t n = 1; n <= N; ++n) {
    // alpha n^2 mod 1 computed from n^2 mod (denominator-free) in long double.
    const long double nn = static_cast<long double>(n);
    long double phase = static_cast<long double>(alpha) * nn * nn + static_cast<long double>(beta) * nn;
    phase -= std::floor(phase);
    const double theta = kTwoPi * static_cast<double>(phase);
    re.add(std::cos(theta));
    im.add(std::sin(theta));
  }
  return {re.value(), im.value()};
}

double weyl_bound(std::int64_t N, std::int64_t q, double eps) {
  if (N < 1 || q < 1) throw PreconditionError("weyl_bound: need N >= 1 and q >= 1");
  if (!(eps > 0.0)) throw PreconditionError("weyl_bound: eps must be > 0");
  const double n = static_cast<double>(N);
  const double qq = static_cast<double>(q);
  return std::pow(n, 1.0 + eps) * std::sqrt(1.0 / n + 1.0 / qq + qq / (n * n));
}

double weyl_bound_rhs(const RealQuadratic& f, std::int64_t N, double eps, double Q) {
  const RationalApprox r = dirichlet_approx(f.alpha, Q);
  const double qq = static_cast<double>(r.q);
  if (r.error() > 1.0 / (qq * qq)) {
    throw PreconditionError("weyl_bound_rhs: |alpha - a/q| > 1/q^2; enlarge Q");
  }
  return weyl_bound(N, r.q, eps);
}

std::string to_string(PoissonFamily family) {
  return family == PoissonFamily::kGaussian ? "gaussian" : "bump";
}

PoissonFamily parse_poisson_family(const std::string& name) {
  if (name == "gaussian") return PoissonFamily::kGaussian;
  if (name == "bump") return PoissonFamily::kBump;
  throw PreconditionError("unknown Poisson family '" + name + "' (expected gaussian or bump)");
}

namespace {

// Sum of terms for |m| <= T, adding the smallest magnitudes first.
double symmetric_sum(int truncation, const std::function<double(int)>& term) {
  KahanSum acc;
  for (int m = truncation; m >= 1; --m) {
    acc.add(term(m));
    acc.add(term(-m));
  }
  acc.add(term(0));
  return acc.value();
}

// 2 sum_{m > T} exp(-c m^2) <= 2 exp(-c (T+1)^2) / (1 - exp(-c (2T+3))).
double gaussian_tail(double c, int truncation) {
  const double t1 = truncation + 1.0;
  return 2.0 * std::exp(-c * t1 * t1) / (1.0 - std::exp(-c * (2.0 * t1 + 1.0)));
}

// Fourier transform of psi0(x / sigma) at xi by the trapezoid rule on its
// support [-2 sigma, 2 sigma]; exponentially accurate for a smooth bump.
double bump_transform(double sigma, double xi) {
  const int panels = 4096;
  const double a = -2.0 * sigma;
  const double h = 4.0 * sigma / panels;
  KahanSum acc;
  for (int i = 1; i < panels; ++i) {
    const double x = a + i * h;
    acc.add(bump_psi0(x / sigma) * std::cos(x * xi));
  }
  return acc.value() * h;
}

}  // namespace

PoissonResult poisson_check(PoissonFamily family, double sigma, int truncation) {
  if (!(sigma > 0.0)) throw PreconditionError("poisson_check: sigma must be > 0");
  if (truncation < 0) throw PreconditionError("poisson_check: truncation must be >= 0");
  PoissonResult out;
  if (family == PoissonFamily::kGaussian) {
    const double amp = sigma * std::sqrt(kTwoPi);
    const double c_hat = 2.0 * std::numbers::pi * std::numbers::pi * sigma * sigma;
    const double c_f = 1.0 / (2.0 * sigma * sigma);
    out.lhs = symmetric_sum(truncation, [&](int m) { return amp * std::exp(-c_hat * m * m); });
    out.rhs = symmetric_sum(truncation, [&](int m) { return std::exp(-c_f * m * m); });
    out.tail_bound = amp * gaussian_tail(c_hat, truncation) + gaussian_tail(c_f, truncation);
  } else {
    out.lhs = symmetric_sum(truncation, [&](int m) { return bump_transform(sigma, kTwoPi * m); });
    out.rhs = symmetric_sum(truncation, [&](int m) { return bump_psi0(m / sigma); });
    // f vanishes for |x| >= 2 sigma; the transform side has no closed-form
    // tail, so report the size of the first two omitted terms.
    const double next = std::abs(bump_transform(sigma, kTwoPi * (truncation + 1))) +
                        std::abs(bump_transform(sigma, kTwoPi * (truncation + 2)));
    const double f_tail = (truncation + 1 < 2.0 * sigma) ? 2.0 * 2.0 * sigma : 0.0;
    out.tail_bound = 2.0 * next + f_tail;
  }
  return out;
}

}  // namespace shrira::arith
