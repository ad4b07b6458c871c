#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shrira/dyadic.hpp"
#include "shrira/report.hpp"
#include "shrira/solver.hpp"
#include "shrira/spectral_field.hpp"

namespace shrira {

// ---------------------------------------------------------------------------
// Time quadrature of ||W(t) f||_inf over an interval
// ---------------------------------------------------------------------------

struct TimeQuadrature {
  /// Gauss-Legendre nodes per panel.
  int per_panel = 4;
  /// Node spacing is at most 1 / (spacing_factor * max(m^2+n^2) over the support).
  double spacing_factor = 8.0;
  /// Oversampling for the L^inf evaluation at each node.
  int oversample = 4;
  /// Largest accepted relative change of the norm when the panels are doubled.
  double self_convergence_tol = 1e-3;
};

struct SpaceTimeNorm {
  double value = 0.0;
  int nodes = 0;
  /// Relative change under panel doubling; negative when not checked.
  double self_convergence = -1.0;
};

/// (int_{t0}^{t0+len} ||W(t) f||_inf^2 dt)^{1/2}. With `check`, recomputes with
/// twice the panels and throws ResolutionError above the tolerance.
SpaceTimeNorm free_flow_l2_linf(const SpectralField& f, double t0, double len,
                                const TimeQuadrature& tq, bool check);

// ---------------------------------------------------------------------------
// Strichartz estimates for the free group
// ---------------------------------------------------------------------------

struct StrichartzConfig {
  int grid_modes = 256;
  /// Decay exponent of the random data.
  double sigma = 1.0;
  /// Fitted constant must stay below this.
  double ceiling = 4.0;
  /// Self-convergence check on the first this-many samples of each shell.
  int checked_samples = 1;
  TimeQuadrature quadrature;
};

/// ||W(.) P~_N u0||_{L^2(I; L^inf)} against (1 v N)^alpha ||P~_N u0||, I = [0, 1/(1 v N)],
/// over random u0 on the configured grid.
ProbeReport strichartz_local_probe(const DyadicIndex& N, double alpha, int samples,
                                   std::uint64_t seed, const StrichartzConfig& cfg = {});

/// strichartz_local_probe for N = 1, 2, ..., n_max (powers of two), with the
/// slope of max_samples ||W P~_N u0|| / ||P~_N u0|| against N as alpha_eff.
ProbeReport strichartz_scan(int n_max, double alpha, int samples, std::uint64_t seed,
                            const StrichartzConfig& cfg = {}, double slope_ceiling = 0.35);

struct StrichartzGlobalConfig {
  int grid_modes = 32;
  double sigma = 4.0;
  double ceiling = 4.0;
  TimeQuadrature quadrature;
};

/// ||W(.) u0||_{L^2([0,1]; L^inf)} against ||u0||_{H^s}.
ProbeReport strichartz_global_probe(double s, int samples, std::uint64_t seed,
                                    const StrichartzGlobalConfig& cfg = {});

/// One sample of the global estimate for given data.
ProbeSample strichartz_global_sample(const SpectralField& u0, double s, const TimeQuadrature& tq);

// ---------------------------------------------------------------------------
// Kernel sum inside the Strichartz argument
// ---------------------------------------------------------------------------

struct KernelSum {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// |sum_{m != 0} sum_n psi0^2(m/2^k) psi0^2(n/2^k) e^{i[mx + ny - t sgn(m)(m^2+n^2)]}|
/// against 2^j 2^{(1/2+eps)k} 2^{-eps j}. Requires j >= k >= 0 and
/// |t| in (2^{-j}, 2^{1-j}].
KernelSum kernel_sum_probe(int k, int j, double t, double x, double y, double eps);

/// Brute-force double sum over the same support; reference for kernel_sum_probe.
double kernel_sum_direct(int k, double t, double x, double y);

struct TrendTest {
  double statistic = 0.0;
  double z = 0.0;
  bool upward = false;
};

/// One-sided Mann-Kendall test for an increasing trend at the 95% level.
TrendTest mann_kendall_upward(const std::vector<double>& values);

/// Sweep over 0 <= k <= k_max, k <= j <= j_max with `per_cell` random (t, x, y)
/// per cell plus the window edge t = 2^{1-j}. Passes when neither the per-k
/// nor the per-j maxima of the cell maxima trend upward.
ProbeReport kernel_sum_scan(int k_max, int j_max, int per_cell, double eps, std::uint64_t seed,
                            double ceiling = 64.0);

// ---------------------------------------------------------------------------
// Commutator and product estimates
// ---------------------------------------------------------------------------

/// ||J^s(fg) - f J^s g|| against
/// ||J^s f|| ||g||_inf + (||f||_inf + ||grad f||_inf) ||J^{s-1} g||, s >= 1.
/// Evaluated on a grid with twice the modes so the products are exact.
ProbeSample commutator_probe(const SpectralField& f, const SpectralField& g, double s,
                             int oversample = 4);

/// ||fg||_{H^s} against ||f||_{H^s} ||g||_inf + ||f||_inf ||g||_{H^s}, s >= 0.
ProbeSample product_probe(const SpectralField& f, const SpectralField& g, double s,
                          int oversample = 4);

struct PairSweepConfig {
  int grid_modes = 32;
  double sigma = 3.0;
  double ceiling = 4.0;
};

ProbeReport commutator_sweep(double s, int samples, std::uint64_t seed, const PairSweepConfig& cfg = {});
ProbeReport product_sweep(double s, int samples, std::uint64_t seed, const PairSweepConfig& cfg = {});

// ---------------------------------------------------------------------------
// Trajectory estimates
// ---------------------------------------------------------------------------

/// ||w||_{H^s} at each recorded time (from the diagnostics when s matches).
std::vector<double> hs_series(const Trajectory& traj, double s);

/// Cumulative trapezoid integral of ||w||_inf + ||grad w||_inf, i.e. g(t) at
/// each recorded time.
std::vector<double> g_series(const Trajectory& traj);

/// ||w||_{L^1_T L^inf} against T^{1/2}(||w||_{L^inf_T H^s} + ||w^2/2||_{L^1_T H^s})
/// for every recorded T > 0.
ProbeReport l1_linf_probe(const Trajectory& traj, double s, double ceiling = 4.0);

/// Integrated energy inequality per recorded T: sup||w||^2_{H^s} - ||w0||^2
/// against g(T) sup||w||^2_{H^s}; the fitted constant is the smallest C0 for
/// the integrated form. extras["c0_differential"] holds the pointwise rates
/// (finite-difference d/dt ||w||^2_{H^s}) / ((||w||_inf + ||grad w||_inf) ||w||^2_{H^s}).
ProbeReport energy_probe(const Trajectory& traj, double s, double ceiling = 1e3);

/// g(T) against T^{1/2} (1 + g(T)) ||w||_{L^inf_T H^s} per recorded T; the
/// fitted constant is the smallest C_s.
ProbeReport gT_probe(const Trajectory& traj, double s, double ceiling = 1e3);

/// Solves to T = existence_time(u0, s, A_s) and checks
/// ||w||_{L^inf_T H^s} <= 2 ||w0||_{H^s} and g(T) <= (8/3) C_s ||w0||_{H^s},
/// with C_s from gT_probe on the same run unless given. A failed run is
/// recorded in the report, not thrown.
ProbeReport lemma52_probe(const SpectralField& u0, double s, double a_s, const SolveConfig& base,
                          std::optional<double> c_s = std::nullopt, int min_steps = 64);

// ---------------------------------------------------------------------------
// Weyl inequality
// ---------------------------------------------------------------------------

/// |weyl_sum| / weyl_bound_rhs over random (alpha, beta) in [0,1)^2 and
/// N = 2^p for p in [log2_min, log2_max], with q from dirichlet_approx(alpha, N).
/// One sample per N (the worst quadratic). Passes when the last octave's
/// maximum is at most `octave_factor` times the maximum over smaller N and
/// the per-N maxima show no upward trend.
ProbeReport weyl_scan(int quadratics, double eps, int log2_min, int log2_max, std::uint64_t seed,
                      double octave_factor = 1.2, double ceiling = 16.0);

}  // namespace shrira
