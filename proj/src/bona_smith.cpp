#include "shrira/bona_smith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shrira/bump.hpp"
#include "shrira/errors.hpp"
#include "shrira/parallel.hpp"
#include "shrira/random_field.hpp"
#include "shrira/spectral_ops.hpp"

namespace shrira {

double MollifierRho::operator()(double x, double y) const { return bump_rho(std::hypot(x, y)); }

SpectralField mollify(const SpectralField& w0, int n) {
  if (n < 1) throw PreconditionError("mollify: n must be a positive integer");
  const double inv = 1.0 / n;
  const MollifierRho rho;
  return w0.multiplied([&](int m, int k) { return Complex(rho(m * inv, k * inv), 0.0); });
}

double mollifier_tail(const SpectralField& w0, int n, double s) {
  if (n < 1) throw PreconditionError("mollifier_tail: n must be a positive integer");
  const MollifierRho rho;
  double acc = 0.0;
  w0.for_each_mode([&](int m, int k, Complex c) {
    if (w0.is_real() && w0.grid().is_nyquist(m, k)) return;
    const double cut = 1.0 - rho(static_cast<double>(m) / n, static_cast<double>(k) / n);
    if (cut == 0.0) return;
    const double weight = std::pow(1.0 + static_cast<double>(m) * m + static_cast<double>(k) * k, s);
    acc += cut * cut * std::norm(c) * weight;
  });
  return std::sqrt(acc);
}

SpectralField synthetic_decay_field(const GridSpec& grid, double s_data) {
  SpectralField f(grid, true);
  const double p = -(s_data + 1.0) / 2.0;
  for (int m = -grid.half_x() + 1; m < grid.half_x(); ++m) {
    for (int n = -grid.half_y() + 1; n < grid.half_y(); ++n) {
      f(m, n) = std::pow(1.0 + static_cast<double>(m) * m + static_cast<double>(n) * n, p);
    }
  }
  return f;
}

ProbeReport convergence_experiment(const SpectralField& w0, double s, double s_data, const std::vector<int>& n_list,
                                   double tolerance) {
  if (!(s_data > s)) throw PreconditionError("convergence_experiment: s_data must exceed s");
  if (n_list.empty()) throw PreconditionError("convergence_experiment: n_list is empty");
  const double rate = s_data - s;
  std::vector<double> err(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t i) { err[i] = sobolev_norm(mollify(w0, n_list[i]) - w0, s); });

  ProbeReport rep;
  rep.estimate_id = EstimateId::kBonaSmithConvergence;
  // 1 - rho~(./n) vanishes for |k| < n/2, so the error is at most
  // (n/2)^{-(s_data-s)} ||w0||_{H^{s_data}} for any data.
  const double scale = std::max(sobolev_norm(w0, s_data), 1e-300);
  rep.ceiling = std::pow(2.0, rate) * (1.0 + 1e-12);
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double n = n_list[i];
    rep.add("n=" + std::to_string(n_list[i]), err[i], std::pow(n, -rate) * scale);
    if (err[i] > 0.0) points.emplace_back(n, err[i]);
  }
  if (points.size() >= 3) {
    rep.slope_fit = fit_slope(points);
    rep.slope_floor = -rate * (1.0 + tolerance);
    rep.slope_ceiling = -rate * (1.0 - tolerance);
  }
  rep.extras["s"] = s;
  rep.extras["s_data"] = s_data;
  rep.extras["expected_exponent"] = -rate;
  rep.extras["errors"] = err;
  rep.finalize();
  return rep;
}

ProbeReport flow_continuity_probe(const SpectralField& u0, double s, const std::vector<double>& delta_list,
                                  const SolveConfig& cfg, std::uint64_t seed, double ceiling) {
  if (delta_list.empty()) throw PreconditionError("flow_continuity_probe: delta_list is empty");
  for (double d : delta_list) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw PreconditionError("flow_continuity_probe: deltas must be >= 0");
  }
  cfg.validate();
  RandomFieldOptions opts;
  opts.sigma = 3.0;
  opts.x_mean_zero = true;
  opts.dealiased = cfg.dealias;
  const SpectralField p = scaled_to_norm(random_field(u0.grid(), opts, seed), s, 1.0);

  const Trajectory base = solve_ivp(u0, cfg);
  std::vector<double> diff(delta_list.size(), 0.0);
  parallel_for(delta_list.size(), [&](std::size_t i) {
    if (delta_list[i] == 0.0) return;
    const Trajectory pert = solve_ivp(u0 + delta_list[i] * p, cfg);
    const std::size_t n = std::min(pert.states.size(), base.states.size());
    double sup = 0.0;
    for (std::size_t k = 0; k < n; ++k) sup = std::max(sup, sobolev_norm(pert.states[k] - base.states[k], s));
    diff[i] = sup;
  });

  ProbeReport rep;
  rep.estimate_id = EstimateId::kFlowContinuity;
  rep.rng_seed = seed;
  rep.ceiling = ceiling;
  for (std::size_t i = 0; i < delta_list.size(); ++i) {
    rep.add("delta=" + std::to_string(delta_list[i]), diff[i], delta_list[i]);
  }
  rep.extras["s"] = s;
  rep.extras["horizon"] = base.horizon();
  rep.finalize();
  return rep;
}

}  // namespace shrira
