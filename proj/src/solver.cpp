#include "shrira/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shrira/errors.hpp"
#include "shrira/propagator.hpp"
#include "shrira/spectral_ops.hpp"

namespace shrira {

std::string to_string(Integrator integrator) {
  return integrator == Integrator::kIFRK4 ? "IFRK4" : "STRANG";
}

Integrator parse_integrator(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
  if (upper == "IFRK4") return Integrator::kIFRK4;
  if (upper == "STRANG") return Integrator::kStrang;
  throw PreconditionError("unknown integrator '" + name + "' (expected IFRK4 or STRANG)");
}

void SolveConfig::validate() const {
  if (!(dt > 0.0)) throw PreconditionError("solve: dt must be > 0");
  if (!(horizon > 0.0)) throw PreconditionError("solve: horizon T must be > 0");
  if (dt > horizon * (1.0 + 1e-12)) throw PreconditionError("solve: dt must not exceed the horizon T");
  if (record_stride < 1) throw PreconditionError("solve: record_stride must be >= 1");
  if (!(cfl > 0.0)) throw PreconditionError("solve: cfl constant must be > 0");
  if (!(s >= 0.0)) throw PreconditionError("solve: Sobolev index s must be >= 0");
}

Diagnostics diagnose(const SpectralField& u, double s) {
  Diagnostics d;
  d.l2 = l2_norm(u);
  d.hs = sobolev_norm(u, s);
  d.linf = linf_norm(u);
  d.ux_linf = linf_norm(partial_x(u));
  d.uy_linf = linf_norm(partial_y(u));
  d.grad_linf = d.ux_linf + d.uy_linf;
  for (int n = -u.grid().half_y(); n < u.grid().half_y(); ++n) {
    d.x_mean_residual = std::max(d.x_mean_residual, std::abs(u(0, n)));
  }
  return d;
}

SpectralField rhs_nonlinear(const SpectralField& u, bool dealias) {
  SpectralField out = partial_x(product(u, u, dealias));
  out *= -0.5;
  return out;
}

namespace {

SpectralField nonlinear_term(const SpectralField& u, const SolveConfig& cfg) {
  if (!cfg.nonlinear) return SpectralField(u.grid(), u.is_real());
  return rhs_nonlinear(u, cfg.dealias);
}

SpectralField axpy(const SpectralField& x, double a, const SpectralField& y) {
  SpectralField out = y;
  out *= a;
  out += x;
  return out;
}

SpectralField lawson_rk4(const SpectralField& u, double dt, const SolveConfig& cfg) {
  const SpectralField k1 = nonlinear_term(u, cfg);
  const SpectralField u_half = propagate(u, 0.5 * dt);
  const SpectralField k2 = nonlinear_term(axpy(u_half, 0.5 * dt, propagate(k1, 0.5 * dt)), cfg);
  const SpectralField k3 = nonlinear_term(axpy(u_half, 0.5 * dt, k2), cfg);
  const SpectralField k4 = nonlinear_term(axpy(propagate(u, dt), dt, propagate(k3, 0.5 * dt)), cfg);

  SpectralField incr = propagate(k1, dt);
  incr += propagate(k2 + k3, 0.5 * dt) * 2.0;
  incr += k4;
  return axpy(propagate(u, dt), dt / 6.0, incr);
}

SpectralField rk4_nonlinear(const SpectralField& u, double dt, const SolveConfig& cfg) {
  const SpectralField k1 = nonlinear_term(u, cfg);
  const SpectralField k2 = nonlinear_term(axpy(u, 0.5 * dt, k1), cfg);
  const SpectralField k3 = nonlinear_term(axpy(u, 0.5 * dt, k2), cfg);
  const SpectralField k4 = nonlinear_term(axpy(u, dt, k3), cfg);
  SpectralField incr = k1;
  incr += (k2 + k3) * 2.0;
  incr += k4;
  return axpy(u, dt / 6.0, incr);
}

}  // namespace

SpectralField step(const SpectralField& u, double dt, const SolveConfig& cfg, double t_now) {
  SpectralField next = cfg.integrator == Integrator::kIFRK4
                           ? lawson_rk4(u, dt, cfg)
                           : propagate(rk4_nonlinear(propagate(u, 0.5 * dt), dt, cfg), 0.5 * dt);
  if (!next.all_finite()) {
    std::ostringstream msg;
    msg << "blow-up: non-finite coefficients after the step ending at t = " << (t_now + dt);
    throw BlowUpError(msg.str(), t_now + dt);
  }
  return next;
}

int max_wavenumber_x(const GridSpec& grid, bool dealias) {
  return dealias ? (grid.modes_x - 1) / 3 : grid.half_x() - 1;
}

Trajectory solve_ivp(const SpectralField& u0, const SolveConfig& cfg) {
  cfg.validate();
  if (!u0.is_real()) throw PreconditionError("solve: initial data must be a real field");
  Trajectory traj;
  traj.s = cfg.s;
  if (!x_mean_zero(u0)) {
    traj.warnings.push_back(
        "initial data has a nonzero x-mean row (m = 0); the well-posedness hypothesis "
        "does not hold, the discrete system is still integrated");
  }

  const long long nsteps = std::max<long long>(1, static_cast<long long>(std::ceil(cfg.horizon / cfg.dt - 1e-9)));
  const double dt = cfg.horizon / static_cast<double>(nsteps);
  const int kmax = std::max(1, max_wavenumber_x(u0.grid(), cfg.dealias));

  auto record = [&](double t, const SpectralField& u) {
    const Diagnostics d = diagnose(u, cfg.s);
    if (!std::isfinite(d.linf) || d.linf > cfg.blowup_ceiling) {
      std::ostringstream msg;
      msg << "blow-up: ||u||_inf = " << d.linf << " exceeds the ceiling " << cfg.blowup_ceiling
          << " at t = " << t;
      throw BlowUpError(msg.str(), t);
    }
    if (cfg.nonlinear && dt * kmax * d.linf > cfg.cfl) {
      std::ostringstream msg;
      msg << "advective bound dt * max|m| * ||u||_inf = " << dt * kmax * d.linf
          << " exceeds cfl = " << cfg.cfl << " at t = " << t;
      if (traj.times.empty()) throw PreconditionError("solve: " + msg.str());
      traj.warnings.push_back(msg.str());
    }
    traj.times.push_back(t);
    traj.states.push_back(u);
    traj.diagnostics.push_back(d);
  };

  SpectralField u = u0;
  record(0.0, u);
  for (long long i = 1; i <= nsteps; ++i) {
    const double t_prev = static_cast<double>(i - 1) * dt;
    u = step(u, dt, cfg, t_prev);
    if (i % cfg.record_stride == 0 || i == nsteps) record(static_cast<double>(i) * dt, u);
  }
  return traj;
}

double existence_time(const SpectralField& u0, double s, double a_s) {
  if (!(a_s >= 0.0)) throw PreconditionError("existence_time: A_s must be >= 0");
  const double t = a_s * sobolev_norm(u0, s) + 1.0;
  return 1.0 / (t * t);
}

}  // namespace shrira
