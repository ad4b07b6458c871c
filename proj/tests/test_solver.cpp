#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "shrira/errors.hpp"
#include "shrira/propagator.hpp"
#include "shrira/solver.hpp"
#include "test_util.hpp"

using namespace shrira;
using shrira::testing::cos_mode;
using shrira::testing::rand_field;
using shrira::testing::rel_diff;
using shrira::testing::sin_mode;

namespace {

const GridSpec g32 = GridSpec::square(32);

SpectralField smooth_data(int modes, std::uint64_t seed, double h2) {
  return scaled_to_norm(rand_field(modes, seed, 3.0, true, true), 2.0, h2);
}

SolveConfig config(double dt, double horizon, Integrator integ = Integrator::kIFRK4) {
  SolveConfig c;
  c.dt = dt;
  c.horizon = horizon;
  c.integrator = integ;
  return c;
}

}  // namespace

TEST(Rhs, Examples) {
  SpectralField c(g32);
  c(0, 0) = 3.0;
  EXPECT_TRUE(rhs_nonlinear(c).is_zero());
  EXPECT_LT(max_abs_diff(rhs_nonlinear(cos_mode(g32, 1, 0)), sin_mode(g32, 2, 0, 0.5)), 1e-16);
}

// For data inside |m|,|n| < M/6 both products are exact, so the divergence and
// advective forms agree to round-off.
TEST(Rhs, MatchesAdvectiveFormOnBandLimitedData) {
  const SpectralField u = rand_field(32, 1).restricted([](int m, int n) { return 6 * std::abs(m) < 32 && 6 * std::abs(n) < 32; });
  const SpectralField adv = -1.0 * product(u, partial_x(u), true);
  EXPECT_LT(rel_diff(rhs_nonlinear(u), adv), 1e-13);
}

TEST(Step, LinearLimitIsTheGroup) {
  const SpectralField u = rand_field(32, 2);
  for (Integrator integ : {Integrator::kIFRK4, Integrator::kStrang}) {
    SolveConfig c = config(0.01, 0.01, integ);
    c.nonlinear = false;
    EXPECT_LT(rel_diff(step(u, 0.37, c), propagate(u, 0.37)), 1e-15) << to_string(integ);
  }
}

TEST(Step, NonFiniteIsBlowUp) {
  SpectralField u = rand_field(16, 3);
  u(1, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    step(u, 1e-3, config(1e-3, 1.0), 0.25);
    FAIL();
  } catch (const BlowUpError& e) {
    EXPECT_NEAR(e.time(), 0.251, 1e-12);
  }
}

TEST(Step, ConvergenceOrders) {
  const SpectralField u0 = smooth_data(32, 4, 2.0);
  const double T = 0.05;
  for (auto [integ, order] : {std::pair{Integrator::kIFRK4, 4.0}, std::pair{Integrator::kStrang, 2.0}}) {
    const SpectralField ref = solve_ivp(u0, config(T / 256, T, integ)).states.back();
    const double e1 = (solve_ivp(u0, config(T / 8, T, integ)).states.back() - ref).l2_norm();
    const double e2 = (solve_ivp(u0, config(T / 16, T, integ)).states.back() - ref).l2_norm();
    EXPECT_GT(std::log2(e1 / e2), order - 0.5) << to_string(integ) << " " << e1 << " " << e2;
  }
}

// Small amplitude a: the nonlinear correction over a short time is O(a^2).
TEST(Step, PerturbativeLimit) {
  const SpectralField mode = cos_mode(g32, 2, 1);
  double prev = 0.0;
  for (double a : {1e-2, 5e-3, 2.5e-3}) {
    const SpectralField u0 = a * mode;
    const SpectralField u = solve_ivp(u0, config(1e-3, 0.02)).states.back();
    const double dev = (u - propagate(u0, 0.02)).l2_norm();
    if (prev > 0) EXPECT_NEAR(prev / dev, 4.0, 0.05);
    prev = dev;
  }
}

TEST(Solve, ZeroData) {
  const Trajectory tr = solve_ivp(SpectralField(g32), config(0.01, 0.1));
  for (const auto& s : tr.states) EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(tr.times.front(), 0.0);
  EXPECT_DOUBLE_EQ(tr.times.back(), 0.1);
  EXPECT_EQ(tr.states.size(), tr.times.size());
  EXPECT_TRUE(tr.warnings.empty());
}

TEST(Solve, RecordStrideAndFinalTime) {
  SolveConfig c = config(0.01, 0.095);
  c.record_stride = 3;
  const Trajectory tr = solve_ivp(smooth_data(32, 5, 0.5), c);
  // dt is shortened to 0.095/10; records at steps 0,3,6,9,10
  ASSERT_EQ(tr.times.size(), 5u);
  EXPECT_DOUBLE_EQ(tr.times.back(), 0.095);
  EXPECT_NEAR(tr.times[1], 3 * 0.0095, 1e-15);
}

TEST(Solve, ConservationLaws) {
  const SpectralField u0 = smooth_data(64, 6, 0.5);
  const Trajectory tr = solve_ivp(u0, config(1e-3, 0.05));
  for (const SpectralField& u : tr.states) {
    EXPECT_LE(std::abs(u(0, 0) - u0(0, 0)), 1e-14);
    for (int n = -32; n < 32; ++n) EXPECT_LE(std::abs(u(0, n) - u0(0, n)), 1e-13);
    EXPECT_LT(std::abs(u.l2_norm() - u0.l2_norm()) / u0.l2_norm(), 1e-8);
    EXPECT_LT(u.hermitian_defect(), 1e-15);
  }
}

// A mean on the m = 0 row is not moved by either term.
TEST(Solve, MeanRowConservedWithNonzeroMean) {
  const SpectralField u0 = smooth_data(32, 7, 0.5) + cos_mode(g32, 0, 2, 0.1);
  const Trajectory tr = solve_ivp(u0, config(1e-3, 0.02));
  ASSERT_FALSE(tr.warnings.empty());
  for (int n = -16; n < 16; ++n) EXPECT_LE(std::abs(tr.states.back()(0, n) - u0(0, n)), 1e-13);
}

TEST(Solve, Errors) {
  const SpectralField u0 = smooth_data(32, 8, 0.5);
  EXPECT_THROW(solve_ivp(u0, config(0.0, 1.0)), PreconditionError);
  EXPECT_THROW(solve_ivp(u0, config(2.0, 1.0)), PreconditionError);
  EXPECT_THROW(solve_ivp(u0.as_complex(), config(0.01, 0.1)), PreconditionError);
  // CFL violated at t = 0
  EXPECT_THROW(solve_ivp(1e3 * u0, config(0.01, 0.1)), PreconditionError);
  SolveConfig low = config(1e-3, 0.01);
  low.blowup_ceiling = 1e-6;
  EXPECT_THROW(solve_ivp(u0, low), BlowUpError);
  EXPECT_THROW(parse_integrator("euler"), PreconditionError);
  EXPECT_EQ(parse_integrator("strang"), Integrator::kStrang);
  EXPECT_EQ(parse_integrator("IFRK4"), Integrator::kIFRK4);
}

TEST(ExistenceTime, Examples) {
  EXPECT_DOUBLE_EQ(existence_time(SpectralField(g32), 2.0, 5.0), 1.0);
  SpectralField d(g32);
  d(0, 0) = 1.0;  // ||d||_{H^s} = 1 for every s
  EXPECT_DOUBLE_EQ(existence_time(d, 2.0, 1.0), 0.25);
  EXPECT_LT(existence_time(2.0 * d, 2.0, 1.0), existence_time(d, 2.0, 1.0));
  EXPECT_THROW(existence_time(d, 2.0, -1.0), PreconditionError);
}

TEST(Diagnostics, MatchDirectComputation) {
  const SpectralField u = cos_mode(g32, 1, 0) + sin_mode(g32, 0, 2, 0.5);
  const Diagnostics d = diagnose(u, 1.0);
  EXPECT_NEAR(d.linf, 1.5, 1e-12);
  EXPECT_NEAR(d.ux_linf, 1.0, 1e-12);
  EXPECT_NEAR(d.uy_linf, 1.0, 1e-12);
  EXPECT_NEAR(d.x_mean_residual, 0.25, 1e-15);
  EXPECT_NEAR(d.hs, std::sqrt(0.5 * 2 + 0.125 * 5), 1e-14);
}
