#include <gtest/gtest.h>

#include <cmath>

#include "shrira/bona_smith.hpp"
#include "shrira/bump.hpp"
#include "shrira/errors.hpp"
#include "shrira/propagator.hpp"
#include "test_util.hpp"

using namespace shrira;
using shrira::testing::rand_field;
using shrira::testing::rel_diff;

TEST(Rho, RadialProfile) {
  const MollifierRho rho;
  EXPECT_EQ(rho(0, 0), 1.0);
  EXPECT_EQ(rho(0.3, 0.3), 1.0);
  EXPECT_EQ(rho(0.6, 0.8), 0.0);
  EXPECT_DOUBLE_EQ(rho(0.45, 0.6), bump_rho(0.75));
  EXPECT_EQ(rho(0.45, 0.6), rho(-0.6, 0.45));
  EXPECT_GT(rho(0.45, 0.6), 0.0);
  EXPECT_LT(rho(0.45, 0.6), 1.0);
}

TEST(Mollify, Examples) {
  const GridSpec g = GridSpec::square(32);
  SpectralField f(g);
  for (int m : {1, 3, 4}) {
    f(m, 0) = 1.0;
    f(-m, 0) = 1.0;
  }
  const SpectralField r = mollify(f, 4);
  EXPECT_EQ(r(1, 0), Complex(1.0));
  EXPECT_DOUBLE_EQ(r(3, 0).real(), bump_psi0(1.5));
  EXPECT_EQ(r(4, 0), Complex(0.0));
  EXPECT_EQ(r(-3, 0), r(3, 0));
  EXPECT_THROW(mollify(f, 0), PreconditionError);
  EXPECT_THROW(mollifier_tail(f, -1, 1.0), PreconditionError);
}

TEST(Mollify, TailMatchesDirectNorm) {
  const SpectralField w = rand_field(64, 1, 1.5);
  for (int n : {1, 2, 5, 16, 40}) {
    for (double s : {0.0, 1.0, 1.75}) {
      const double direct = sobolev_norm(mollify(w, n) - w, s);
      EXPECT_NEAR(mollifier_tail(w, n, s), direct, 1e-12 * sobolev_norm(w, s)) << n << " " << s;
    }
  }
}

TEST(Mollify, Properties) {
  const SpectralField w = rand_field(64, 2, 1.5, true);
  for (int n : {2, 7, 20}) {
    const SpectralField r = mollify(w, n);
    for (double s : {0.0, 1.0, 2.5}) EXPECT_LE(sobolev_norm(r, s), sobolev_norm(w, s) * (1 + 1e-14));
    // support inside |k| < n
    EXPECT_LE(sobolev_norm(r, 2.0), std::sqrt(1.0 + n * n) * sobolev_norm(r, 1.0) * (1 + 1e-14));
    EXPECT_TRUE(x_mean_zero(r));
    EXPECT_LT(rel_diff(mollify(propagate(w, 0.3), n), propagate(r, 0.3)), 1e-15);
    EXPECT_LT(rel_diff(mollify(laplacian(w), n), laplacian(r)), 1e-15);
    EXPECT_LT(r.hermitian_defect(), 1e-16);
  }
  // n beyond the grid band: identity
  EXPECT_TRUE(mollify(w, 200).identical(w));
}

TEST(Convergence, BandLimitedDataAreReproducedExactly) {
  const SpectralField w = rand_field(32, 3).restricted([](int m, int n) { return m * m + n * n < 16; });
  const ProbeReport r = convergence_experiment(w, 1.0, 2.0, {8, 16, 32});
  for (const auto& s : r.samples) EXPECT_EQ(s.lhs, 0.0);
  EXPECT_FALSE(r.slope_fit.has_value());
  EXPECT_TRUE(r.pass);
}

TEST(Convergence, SyntheticRate) {
  const SpectralField w = synthetic_decay_field(GridSpec::square(256), 2.5);
  EXPECT_EQ(w(128 - 256, 3), Complex(0.0));  // Nyquist row
  EXPECT_DOUBLE_EQ(w(1, 2).real(), std::pow(6.0, -1.75));
  const ProbeReport r = convergence_experiment(w, 1.75, 2.5, {4, 8, 16, 32, 64});
  ASSERT_TRUE(r.slope_fit.has_value());
  EXPECT_NEAR(r.slope_fit->exponent, -0.75, 0.75 * 0.15) << r.to_json().dump(1);
  EXPECT_TRUE(r.pass);
  EXPECT_THROW(convergence_experiment(w, 2.5, 2.5, {4}), PreconditionError);
  EXPECT_THROW(convergence_experiment(w, 1.0, 2.5, {}), PreconditionError);
}

TEST(FlowContinuity, ZeroDeltaAndLinearFlow) {
  const SpectralField u0 = scaled_to_norm(rand_field(32, 4, 3.0, true, true), 1.5, 0.3);
  SolveConfig c;
  c.dt = 0.005;
  c.horizon = 0.05;
  const ProbeReport r = flow_continuity_probe(u0, 1.5, {0.0, 1e-3, 1e-4}, c, 2);
  EXPECT_EQ(r.samples[0].lhs, 0.0);
  EXPECT_NEAR(r.samples[1].ratio, 1.0, 0.05);
  EXPECT_NEAR(r.samples[2].ratio, r.samples[1].ratio, 1e-3);

  // without the nonlinearity the difference is W(t)(delta p), whose H^s norm is delta
  c.nonlinear = false;
  const ProbeReport lin = flow_continuity_probe(u0, 1.5, {0.5, 1e-2}, c, 2);
  for (const auto& s : lin.samples) EXPECT_NEAR(s.ratio, 1.0, 1e-12);
  EXPECT_THROW(flow_continuity_probe(u0, 1.5, {-1.0}, c), PreconditionError);
}
