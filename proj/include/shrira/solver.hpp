#pragma once

#include <string>
#include <vector>

#include "shrira/spectral_field.hpp"

namespace shrira {

enum class Integrator { kIFRK4, kStrang };

std::string to_string(Integrator integrator);
Integrator parse_integrator(const std::string& name);

struct SolveConfig {
  double dt = 1e-3;
  double horizon = 1e-2;
  Integrator integrator = Integrator::kIFRK4;
  bool dealias = true;
  /// Sobolev index tracked in the diagnostics.
  double s = 2.0;
  int record_stride = 1;
  /// Advective bound dt <= cfl / (max|m| * ||u||_inf).
  double cfl = 0.5;
  /// ||u||_inf above this counts as blow-up.
  double blowup_ceiling = 1e6;
  /// Test hook: false drops the nonlinear term, leaving the free flow.
  bool nonlinear = true;

  void validate() const;
};

struct Diagnostics {
  double l2 = 0.0;
  double hs = 0.0;
  double linf = 0.0;
  double ux_linf = 0.0;
  double uy_linf = 0.0;
  /// ||d_x u||_inf + ||d_y u||_inf
  double grad_linf = 0.0;
  /// max_n |u^(0,n)|
  double x_mean_residual = 0.0;
};

Diagnostics diagnose(const SpectralField& u, double s);

struct Trajectory {
  double s = 2.0;
  std::vector<double> times;
  std::vector<SpectralField> states;
  std::vector<Diagnostics> diagnostics;
  std::vector<std::string> warnings;

  double horizon() const { return times.empty() ? 0.0 : times.back(); }
};

/// -u u_x in divergence form, -(1/2) d_x (u^2), with a dealiased product.
SpectralField rhs_nonlinear(const SpectralField& u, bool dealias = true);

/// One step of size dt. IFRK4 is the Lawson (integrating-factor) RK4 around the
/// exact group; STRANG is W(dt/2) o RK4-nonlinear(dt) o W(dt/2).
/// Throws BlowUpError if the result is not finite.
SpectralField step(const SpectralField& u, double dt, const SolveConfig& cfg, double t_now = 0.0);

/// Largest retained |m| on the grid under the config's dealiasing.
int max_wavenumber_x(const GridSpec& grid, bool dealias);

/// Integrates to cfg.horizon, recording every record_stride steps and at the
/// final time. The step is shrunk so that an integer number of steps lands on
/// the horizon.
Trajectory solve_ivp(const SpectralField& u0, const SolveConfig& cfg);

/// (A_s ||u0||_{H^s} + 1)^{-2}.
double existence_time(const SpectralField& u0, double s, double a_s);

}  // namespace shrira
