#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "shrira/bump.hpp"
#include "shrira/errors.hpp"
#include "shrira/estimates.hpp"
#include "shrira/propagator.hpp"
#include "test_util.hpp"

using namespace shrira;
using shrira::testing::cos_mode;
using shrira::testing::rand_field;
using shrira::testing::sin_mode;

namespace {

const GridSpec g16 = GridSpec::square(16);

SolveConfig cfg(double dt, double T, bool nonlinear = true) {
  SolveConfig c;
  c.dt = dt;
  c.horizon = T;
  c.nonlinear = nonlinear;
  return c;
}

// Brute-force (int_0^len max_x |W(t)f|^2 dt)^{1/2}: fine physical grid, midpoint rule in t.
double brute_l2_linf(const SpectralField& f, double len, int nx, int nt) {
  double acc = 0.0;
  for (int it = 0; it < nt; ++it) {
    const double t = (it + 0.5) * len / nt;
    double mx = 0.0;
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < nx; ++j) {
        const double x = 2 * std::numbers::pi * i / nx, y = 2 * std::numbers::pi * j / nx;
        std::complex<double> v{};
        for (int m = -f.grid().half_x(); m < f.grid().half_x(); ++m) {
          for (int n = -f.grid().half_y(); n < f.grid().half_y(); ++n) {
            const Complex c = f(m, n);
            if (c == Complex{}) continue;
            const double sg = (m > 0) - (m < 0);
            v += c * std::polar(1.0, m * x + n * y - t * sg * (m * m + n * n));
          }
        }
        mx = std::max(mx, std::abs(v));
      }
    }
    acc += mx * mx;
  }
  return std::sqrt(acc * len / nt);
}

}  // namespace

TEST(Bump, Properties) {
  EXPECT_EQ(smooth_step(-1.0), 0.0);
  EXPECT_EQ(smooth_step(1.5), 1.0);
  EXPECT_NEAR(smooth_step(0.5), 0.5, 1e-15);
  for (double t = 0.05; t < 1.0; t += 0.05) EXPECT_NEAR(smooth_step(t) + smooth_step(1 - t), 1.0, 1e-15);
  for (double x = -3; x <= 3; x += 0.01) {
    EXPECT_EQ(bump_psi0(x), bump_psi0(-x));
    if (std::abs(x) <= 1.0) EXPECT_EQ(bump_psi0(x), 1.0);
    if (std::abs(x) >= 2.0) EXPECT_EQ(bump_psi0(x), 0.0);
    EXPECT_GE(bump_psi0(x), 0.0);
    EXPECT_LE(bump_psi0(x), 1.0);
  }
  EXPECT_EQ(bump_rho(0.49), 1.0);
  EXPECT_EQ(bump_rho(1.0), 0.0);
  EXPECT_EQ(bump_rho(0.7), bump_psi0(1.4));
}

TEST(FitSlope, Examples) {
  std::vector<std::pair<double, double>> sq, flat, noisy;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (double x : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    sq.emplace_back(x, x * x);
    flat.emplace_back(x, 3.0);
    noisy.emplace_back(x, std::pow(x, 1.5) * std::exp(noise(rng)));
  }
  EXPECT_NEAR(fit_slope(sq).exponent, 2.0, 1e-12);
  EXPECT_NEAR(fit_slope(sq).r2, 1.0, 1e-12);
  EXPECT_NEAR(fit_slope(flat).exponent, 0.0, 1e-12);
  EXPECT_NEAR(fit_slope(flat).intercept, std::log(3.0), 1e-12);
  EXPECT_NEAR(fit_slope(noisy).exponent, 1.5, 0.05);
  EXPECT_THROW(fit_slope({{1, 1}, {2, 2}}), PreconditionError);
}

TEST(FreeFlow, SingleModeClosedForm) {
  SpectralField f(g16, false);
  f(3, -2) = Complex(0.6, 0.8);
  const SpaceTimeNorm st = free_flow_l2_linf(f, 0.2, 0.5, {}, true);
  EXPECT_NEAR(st.value, std::sqrt(0.5), 1e-12);
  // m = 0 data do not move in time
  SpectralField g(g16, false);
  g(0, 5) = 2.0;
  EXPECT_NEAR(free_flow_l2_linf(g, 0.0, 0.25, {}, false).value, 2.0 * 0.5, 1e-12);
}

TEST(FreeFlow, MatchesBruteForce) {
  SpectralField f(g16, false);
  f(1, 0) = 1.0;
  f(0, 1) = 0.7;
  f(1, 1) = Complex(0.0, 0.5);
  f(-2, 1) = 0.3;
  const double len = 0.4;
  const double fast = free_flow_l2_linf(f, 0.0, len, {}, true).value;
  const double slow = brute_l2_linf(f, len, 96, 400);
  // both are grid maxima (64^2 vs 96^2 points), so agreement is to sampling accuracy
  EXPECT_NEAR(fast, slow, 2e-3 * slow);
}

TEST(Strichartz, ZeroShellRatioIsOne) {
  // P~_0 keeps the mean; W(t) fixes it, so lhs = |I|^{1/2} |c| with |I| = 1.
  StrichartzConfig c;
  c.grid_modes = 16;
  const ProbeReport r = strichartz_local_probe(DyadicIndex::zero(), 0.5, 3, 7, c);
  ASSERT_EQ(r.samples.size(), 3u);
  for (const auto& s : r.samples) EXPECT_NEAR(s.ratio, 1.0, 1e-12);
}

TEST(Strichartz, ShellBeyondGridIsRangeError) {
  StrichartzConfig c;
  c.grid_modes = 16;
  EXPECT_THROW(strichartz_local_probe(DyadicIndex::power(6), 0.5, 1, 1, c), RangeError);
}

TEST(Strichartz, LocalProbeBoundedOnSmallGrid) {
  StrichartzConfig c;
  c.grid_modes = 32;
  const ProbeReport r = strichartz_scan(8, 0.5, 2, 3, c);
  EXPECT_TRUE(r.slope_fit.has_value());
  EXPECT_LT(r.extras["self_convergence"].get<double>(), 1e-3);
  for (const auto& s : r.samples) EXPECT_GT(s.ratio, 0.0);
  EXPECT_TRUE(r.pass) << r.to_json().dump(1);
}

TEST(Strichartz, GlobalScaleInvarianceAndMonotoneInS) {
  const SpectralField u = rand_field(16, 2, 4.0);
  const TimeQuadrature tq;
  const ProbeSample a = strichartz_global_sample(u, 1.0, tq);
  const ProbeSample b = strichartz_global_sample(3.0 * u, 1.0, tq);
  EXPECT_NEAR(a.ratio, b.ratio, 1e-12 * a.ratio);
  EXPECT_GE(a.ratio, strichartz_global_sample(u, 2.0, tq).ratio);
  SpectralField c(g16);
  c(0, 0) = 1.5;
  EXPECT_NEAR(strichartz_global_sample(c, 1.0, tq).ratio, 1.0, 1e-12);
}

TEST(Kernel, ZeroScaleHasSixTerms) {
  // k = 0: psi0^2(v) is nonzero only for |v| <= 1 and m = 0 is excluded.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double t = 1.0 + std::abs(u(rng)) / 3.0;
    EXPECT_LE(kernel_sum_probe(0, 0, t, u(rng), u(rng), 0.1).lhs, 6.0 + 1e-12);
  }
  // at x = y = 0 the two halves are conjugate: lhs = |2 cos t + 4 cos 2t|
  const double t = 1.5;
  EXPECT_NEAR(kernel_sum_probe(0, 0, t, 0, 0, 0.1).lhs, std::abs(2 * std::cos(t) + 4 * std::cos(2 * t)), 1e-13);
}

TEST(Kernel, SeparableEqualsDirect) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k <= 4; ++k) {
    for (int trial = 0; trial < 10; ++trial) {
      const int j = k + trial % 3;
      const double t = std::ldexp(1.0, -j) * (1.0 + 0.999 * std::abs(u(rng)) / 4.0);
      const double x = u(rng), y = u(rng);
      EXPECT_NEAR(kernel_sum_probe(k, j, t, x, y, 0.1).lhs, kernel_sum_direct(k, t, x, y),
                  1e-10 * std::ldexp(1.0, 2 * k + 4));
    }
  }
}

TEST(Kernel, TriangleBoundAndWindow) {
  for (int k = 0; k <= 5; ++k) {
    double weights = 0.0;
    for (int v = -(2 << k); v <= (2 << k); ++v) weights += std::pow(bump_psi0(v / std::ldexp(1.0, k)), 2);
    const double w0 = 1.0;  // v = 0 term
    const double bound = (weights - w0) * weights;
    EXPECT_LE(kernel_sum_probe(k, k, std::ldexp(1.0, 1 - k), 0, 0, 0.1).lhs, bound + 1e-9);
    EXPECT_NEAR(kernel_sum_direct(k, 0.0, 0.0, 0.0), bound, 1e-9 * bound);
  }
  const KernelSum r = kernel_sum_probe(2, 5, 0.05, 0.1, 0.2, 0.1);
  EXPECT_NEAR(r.rhs, 32.0 * std::pow(2.0, 0.6 * 2) * std::pow(2.0, -0.5), 1e-12);
  EXPECT_THROW(kernel_sum_probe(2, 5, std::ldexp(1.0, -5), 0, 0, 0.1), DomainError);
  EXPECT_THROW(kernel_sum_probe(2, 5, 0.1, 0, 0, 0.1), DomainError);
  EXPECT_THROW(kernel_sum_probe(3, 2, 0.3, 0, 0, 0.1), PreconditionError);
  EXPECT_NO_THROW(kernel_sum_probe(2, 5, -0.05, 0, 0, 0.1));
}

TEST(Kernel, MannKendall) {
  EXPECT_TRUE(mann_kendall_upward({1, 2, 3, 4, 5, 6, 7}).upward);
  EXPECT_FALSE(mann_kendall_upward({7, 6, 5, 4, 3, 2, 1}).upward);
  EXPECT_FALSE(mann_kendall_upward({1, 1, 1, 1, 1}).upward);
  EXPECT_FALSE(mann_kendall_upward({1, 2}).upward);
  EXPECT_EQ(mann_kendall_upward({1, 3, 2, 4}).statistic, 4.0);
}

TEST(Kernel, ScanIsDeterministicAndPasses) {
  const ProbeReport a = kernel_sum_scan(3, 6, 5, 0.1, 17);
  const ProbeReport b = kernel_sum_scan(3, 6, 5, 0.1, 17);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  EXPECT_TRUE(a.pass);
}

TEST(Commutator, HandValue) {
  const ProbeSample p = commutator_probe(cos_mode(g16, 1, 0), cos_mode(g16, 0, 1), 1.0);
  EXPECT_NEAR(p.lhs, (std::sqrt(3.0) - std::sqrt(2.0)) / 2, 1e-14);
  EXPECT_NEAR(p.rhs, 1.0 + std::sqrt(2.0), 1e-12);
  SpectralField one(g16);
  one(0, 0) = 2.0;
  EXPECT_LT(commutator_probe(one, rand_field(16, 3), 1.5).lhs, 1e-13);
  EXPECT_THROW(commutator_probe(one, one, 0.5), PreconditionError);
}

TEST(Product, HandValue) {
  const ProbeSample p = product_probe(cos_mode(g16, 1, 0), cos_mode(g16, 0, 1), 1.0);
  EXPECT_NEAR(p.lhs, std::sqrt(3.0) / 2, 1e-14);
  EXPECT_NEAR(p.rhs, 2.0, 1e-12);
  SpectralField one(g16);
  one(0, 0) = 1.0;
  const SpectralField f = rand_field(16, 4);
  // g = 1: lhs = ||f||_{H^s}, rhs = ||f||_{H^s} + ||f||_inf
  EXPECT_LT(product_probe(f, one, 2.0).ratio, 1.0);
}

TEST(Sweeps, BoundedAndThreadIndependent) {
  setenv("SHRIRA_THREADS", "1", 1);
  const std::string one = commutator_sweep(1.5, 12, 8).to_json().dump();
  const std::string p_one = product_sweep(1.0, 12, 8).to_json().dump();
  setenv("SHRIRA_THREADS", "4", 1);
  const ProbeReport c = commutator_sweep(1.5, 12, 8);
  EXPECT_EQ(c.to_json().dump(), one);
  EXPECT_EQ(product_sweep(1.0, 12, 8).to_json().dump(), p_one);
  unsetenv("SHRIRA_THREADS");
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.samples.size(), 12u);
}

TEST(Trajectory, LinearFlowProbes) {
  // cos y is fixed by W(t) and its sup and gradient sup are attained on the grid
  const SpectralField u0 = cos_mode(g16, 0, 1);
  const Trajectory tr = solve_ivp(u0, cfg(0.01, 0.2, false));
  const ProbeReport l1 = l1_linf_probe(tr, 1.0);
  EXPECT_NEAR(l1.samples.back().lhs, 0.2, 1e-12);
  const ProbeReport e = energy_probe(tr, 1.0);
  EXPECT_LT(e.fitted_constant, 1e-12);
  // g(T) = T (||w||_inf + ||grad w||_inf) = 2T
  const ProbeReport g = gT_probe(tr, 1.0);
  EXPECT_NEAR(g.extras["g_T"].get<double>(), 0.4, 1e-12);
  EXPECT_NEAR(g.samples.back().rhs, std::sqrt(0.2) * 1.4 * sobolev_norm(u0, 1.0), 1e-12);
}

TEST(Trajectory, ZeroData) {
  const Trajectory tr = solve_ivp(SpectralField(g16), cfg(0.01, 0.05));
  EXPECT_EQ(l1_linf_probe(tr, 1.0).fitted_constant, 0.0);
  EXPECT_EQ(energy_probe(tr, 1.0).fitted_constant, 0.0);
  EXPECT_EQ(gT_probe(tr, 1.0).fitted_constant, 0.0);
}

// w = a cos x + b sin 2x: dE/dt(0) = (a^2 b / 2)(5^s - 2^s) for E = ||w||_{H^s}^2.
TEST(Trajectory, EnergyRateHandOracle) {
  const double a = 0.3, b = 0.2, s = 1.5;
  const SpectralField u0 = cos_mode(g16, 1, 0, a) + sin_mode(g16, 2, 0, b);
  const Trajectory tr = solve_ivp(u0, cfg(1e-4, 2e-3));
  const ProbeReport e = energy_probe(tr, s);
  const double expected = 0.5 * a * a * b * (std::pow(5.0, s) - std::pow(2.0, s));
  EXPECT_NEAR(e.extras["c0_differential"][0]["dE_dt"].get<double>(), expected, 1e-4 * expected);
  EXPECT_GT(e.extras["c0_differential_max"].get<double>(), 0.0);
}

TEST(Bootstrap, ZeroDataPassesTinyConstantFails) {
  SolveConfig base = cfg(0.01, 1.0);
  const ProbeReport z = lemma52_probe(SpectralField(g16), 2.0, 1.0, base);
  EXPECT_TRUE(z.pass);
  EXPECT_DOUBLE_EQ(z.extras["T"].get<double>(), 1.0);

  // Large data and A_s = 0: T = 1, the flow leaves the ball or breaks down.
  const SpectralField big = scaled_to_norm(rand_field(32, 6, 3.0, true, true), 2.0, 20.0);
  base.blowup_ceiling = 50.0;
  const ProbeReport f = lemma52_probe(big, 2.0, 0.0, base, 1.0, 64);
  EXPECT_FALSE(f.pass);
  EXPECT_THROW(lemma52_probe(big, 2.0, 1.0, base, std::nullopt, 1), PreconditionError);
}

TEST(Report, JsonSchemaAndCsv) {
  ProbeReport r;
  r.estimate_id = EstimateId::kProduct;
  r.ceiling = 2.0;
  r.add("a", 1.0, 2.0);
  r.add("b", 0.0, 0.0);
  r.finalize();
  const auto j = r.to_json();
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["estimate_id"], to_string(EstimateId::kProduct));
  EXPECT_DOUBLE_EQ(j["fitted_constant"].get<double>(), 0.5);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(r.to_csv().substr(0, 20), "input,lhs,rhs,ratio\n");
  EXPECT_THROW(safe_ratio(1.0, 0.0), DomainError);
  EXPECT_EQ(safe_ratio(0.0, 0.0), 0.0);
}

TEST(WeylScan, SmallScanPasses) {
  const ProbeReport r = weyl_scan(50, 0.05, 4, 9, 2);
  EXPECT_EQ(r.samples.size(), 6u);
  EXPECT_TRUE(r.pass) << r.to_json().dump(1);
  EXPECT_THROW(weyl_scan(0, 0.05, 4, 9, 2), PreconditionError);
}
