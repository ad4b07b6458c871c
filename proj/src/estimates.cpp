#include "shrira/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "shrira/arith.hpp"
#include "shrira/bump.hpp"
#include "shrira/errors.hpp"
#include "shrira/parallel.hpp"
#include "shrira/propagator.hpp"
#include "shrira/quadrature.hpp"
#include "shrira/random_field.hpp"
#include "shrira/spectral_ops.hpp"

namespace shrira {

namespace {

// Largest m^2+n^2 among nonzero coefficients with m != 0; the m = 0 row does
// not move under W(t).
double phase_speed(const SpectralField& f) {
  double speed = 0.0;
  f.for_each_mode([&](int m, int n, Complex c) {
    if (m != 0 && c != Complex{}) speed = std::max(speed, static_cast<double>(m) * m + static_cast<double>(n) * n);
  });
  return speed;
}

double l2_linf_with_panels(const SpectralField& f, double t0, double len, int panels, int per_panel, int os) {
  const QuadratureRule rule = composite_gauss_legendre(t0, t0 + len, panels, per_panel);
  std::vector<double> vals(rule.nodes.size());
  parallel_for(vals.size(), [&](std::size_t i) {
    const double v = linf_norm(propagate(f, rule.nodes[i]), os);
    vals[i] = v * v;
  });
  // Fixed summation order keeps the result independent of the thread count.
  double acc = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) acc += rule.weights[i] * vals[i];
  return std::sqrt(acc);
}

GridSpec doubled(const GridSpec& g) { return GridSpec(2 * g.modes_x, 2 * g.modes_y, g.oversample); }

void require_same_grid(const SpectralField& f, const SpectralField& g, const char* who) {
  if (!f.grid().same_modes(g.grid())) throw DimensionError(std::string(who) + ": grids differ");
  if (!f.is_real() || !g.is_real()) throw PreconditionError(std::string(who) + ": real fields required");
}

std::string label(const char* key, double v) {
  std::ostringstream os;
  os << key << '=' << v;
  return os.str();
}

}  // namespace

SpaceTimeNorm free_flow_l2_linf(const SpectralField& f, double t0, double len, const TimeQuadrature& tq,
                                bool check) {
  if (!(len > 0.0)) throw IntervalError("free_flow_l2_linf: interval length must be positive");
  if (tq.per_panel < 1 || !(tq.spacing_factor > 0.0)) {
    throw PreconditionError("free_flow_l2_linf: bad quadrature settings");
  }
  SpaceTimeNorm out;
  if (f.is_zero()) return out;
  const SpectralField fc = f.is_real() ? regrid(f, compact_grid(f, tq.oversample)) : f;
  const double speed = phase_speed(fc);
  if (speed == 0.0) {
    // Stationary under the group: the integrand is constant.
    out.value = std::sqrt(len) * linf_norm(fc, tq.oversample);
    out.nodes = 1;
    if (check) out.self_convergence = 0.0;
    return out;
  }
  const int panels =
      std::max(1, static_cast<int>(std::ceil(len * tq.spacing_factor * speed / tq.per_panel)));
  out.value = l2_linf_with_panels(fc, t0, len, panels, tq.per_panel, tq.oversample);
  out.nodes = panels * tq.per_panel;
  if (check) {
    const double fine = l2_linf_with_panels(fc, t0, len, 2 * panels, tq.per_panel, tq.oversample);
    out.self_convergence = std::abs(fine - out.value) / std::max(fine, 1e-300);
    if (out.self_convergence > tq.self_convergence_tol) {
      throw ResolutionError("time quadrature not converged: relative change " +
                            std::to_string(out.self_convergence));
    }
  }
  return out;
}

ProbeReport strichartz_local_probe(const DyadicIndex& N, double alpha, int samples, std::uint64_t seed,
                                   const StrichartzConfig& cfg) {
  if (samples < 1) throw PreconditionError("strichartz_local_probe: samples must be >= 1");
  const GridSpec grid = GridSpec::square(cfg.grid_modes, cfg.quadrature.oversample);
  if (!N.is_zero() && N.value() > max_shell(grid).value()) {
    throw RangeError("strichartz_local_probe: shell beyond the grid band");
  }
  ProbeReport rep;
  rep.estimate_id = EstimateId::kStrichartzLocal;
  rep.rng_seed = seed;
  rep.ceiling = cfg.ceiling;
  const double len = 1.0 / N.weight();
  double worst_conv = 0.0;
  for (int i = 0; i < samples; ++i) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(i));
    const SpectralField u0 = random_field(grid, {.sigma = cfg.sigma}, rng);
    const SpectralField pn = p_n(u0, N);
    const double norm = pn.l2_norm();
    if (norm == 0.0) continue;  // empty shell
    const bool check = i < cfg.checked_samples;
    const SpaceTimeNorm st = free_flow_l2_linf(pn, 0.0, len, cfg.quadrature, check);
    if (check) worst_conv = std::max(worst_conv, st.self_convergence);
    rep.add("N=" + std::to_string(N.value()) + ",sample=" + std::to_string(i), st.value,
            std::pow(N.weight(), alpha) * norm);
  }
  rep.extras["N"] = N.value();
  rep.extras["alpha"] = alpha;
  rep.extras["grid_modes"] = cfg.grid_modes;
  rep.extras["sigma"] = cfg.sigma;
  rep.extras["self_convergence"] = worst_conv;
  rep.finalize();
  return rep;
}

ProbeReport strichartz_scan(int n_max, double alpha, int samples, std::uint64_t seed,
                            const StrichartzConfig& cfg, double slope_ceiling) {
  if (n_max < 1 || !is_power_of_two(n_max)) throw PreconditionError("strichartz_scan: n_max must be a power of two");
  ProbeReport rep;
  rep.estimate_id = EstimateId::kStrichartzLocal;
  rep.rng_seed = seed;
  rep.ceiling = cfg.ceiling;
  rep.slope_ceiling = slope_ceiling;
  std::vector<std::pair<double, double>> points;
  auto per_shell = nlohmann::ordered_json::array();
  double worst_conv = 0.0;
  for (int k = 0; (1 << k) <= n_max; ++k) {
    const DyadicIndex N = DyadicIndex::power(k);
    const ProbeReport shell = strichartz_local_probe(N, alpha, samples, seed + static_cast<std::uint64_t>(k), cfg);
    worst_conv = std::max(worst_conv, shell.extras["self_convergence"].get<double>());
    double worst = 0.0;  // alpha-free ratio, the quantity whose growth in N is fitted
    for (const auto& s : shell.samples) {
      rep.samples.push_back(s);
      worst = std::max(worst, s.ratio * std::pow(N.weight(), alpha));
    }
    per_shell.push_back({{"N", N.value()}, {"samples", shell.samples.size()}, {"max_unweighted_ratio", worst}});
    if (!shell.samples.empty()) points.emplace_back(static_cast<double>(N.value()), worst);
  }
  if (points.size() >= 3) rep.slope_fit = fit_slope(points);
  rep.extras["alpha"] = alpha;
  rep.extras["per_shell"] = per_shell;
  rep.extras["self_convergence"] = worst_conv;
  rep.finalize();
  if (!rep.slope_fit) rep.pass = false;
  return rep;
}

ProbeSample strichartz_global_sample(const SpectralField& u0, double s, const TimeQuadrature& tq) {
  const double lhs = free_flow_l2_linf(u0, 0.0, 1.0, tq, false).value;
  const double rhs = sobolev_norm(u0, s);
  return {"", lhs, rhs, safe_ratio(lhs, rhs)};
}

ProbeReport strichartz_global_probe(double s, int samples, std::uint64_t seed, const StrichartzGlobalConfig& cfg) {
  if (samples < 1) throw PreconditionError("strichartz_global_probe: samples must be >= 1");
  const GridSpec grid = GridSpec::square(cfg.grid_modes, cfg.quadrature.oversample);
  ProbeReport rep;
  rep.estimate_id = EstimateId::kStrichartzGlobal;
  rep.rng_seed = seed;
  rep.ceiling = cfg.ceiling;
  double worst_conv = 0.0;
  for (int i = 0; i < samples; ++i) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(i));
    const SpectralField u0 = random_field(grid, {.sigma = cfg.sigma}, rng);
    const SpaceTimeNorm st = free_flow_l2_linf(u0, 0.0, 1.0, cfg.quadrature, i == 0);
    if (i == 0) worst_conv = st.self_convergence;
    rep.add("sample=" + std::to_string(i), st.value, sobolev_norm(u0, s));
  }
  rep.extras["s"] = s;
  rep.extras["grid_modes"] = cfg.grid_modes;
  rep.extras["self_convergence"] = worst_conv;
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Kernel sum
// ---------------------------------------------------------------------------

namespace {

// sum over the given frequencies of psi0^2(v / 2^k) e^{i(v z + tau v^2)}
Complex weighted_line_sum(int k, double z, double tau, int sign_filter) {
  const double scale = std::ldexp(1.0, k);
  const int reach = 2 * (1 << k);  // psi0 vanishes from |x| >= 2
  Complex acc{};
  for (int v = -reach; v <= reach; ++v) {
    if (sign_filter > 0 && v <= 0) continue;
    if (sign_filter < 0 && v >= 0) continue;
    const double w = bump_psi0(v / scale);
    if (w == 0.0) continue;
    const double vd = static_cast<double>(v);
    acc += (w * w) * std::polar(1.0, vd * z + tau * vd * vd);
  }
  return acc;
}

}  // namespace

KernelSum kernel_sum_probe(int k, int j, double t, double x, double y, double eps) {
  if (k < 0 || j < k) throw PreconditionError("kernel_sum_probe: need j >= k >= 0");
  if (k > 20 || j > 60) throw RangeError("kernel_sum_probe: index too large");
  const double at = std::abs(t);
  if (!(at > std::ldexp(1.0, -j)) || at > std::ldexp(1.0, 1 - j)) {
    throw DomainError("kernel_sum_probe: |t| must lie in (2^-j, 2^{1-j}]");
  }
  // The phase separates: m > 0 rows carry e^{-it(m^2+n^2)}, m < 0 rows e^{+it(m^2+n^2)}.
  const Complex pos = weighted_line_sum(k, x, -t, +1) * weighted_line_sum(k, y, -t, 0);
  const Complex neg = weighted_line_sum(k, x, t, -1) * weighted_line_sum(k, y, t, 0);
  KernelSum out;
  out.lhs = std::abs(pos + neg);
  out.rhs = std::ldexp(1.0, j) * std::pow(2.0, (0.5 + eps) * k) * std::pow(2.0, -eps * j);
  return out;
}

double kernel_sum_direct(int k, double t, double x, double y) {
  const double scale = std::ldexp(1.0, k);
  const int reach = 2 * (1 << k);
  Complex acc{};
  for (int m = -reach; m <= reach; ++m) {
    if (m == 0) continue;
    const double wm = bump_psi0(m / scale);
    for (int n = -reach; n <= reach; ++n) {
      const double wn = bump_psi0(n / scale);
      const double w = wm * wm * wn * wn;
      if (w == 0.0) continue;
      const double phase = m * x + n * y - t * sgn(m) * (static_cast<double>(m) * m + static_cast<double>(n) * n);
      acc += w * std::polar(1.0, phase);
    }
  }
  return std::abs(acc);
}

TrendTest mann_kendall_upward(const std::vector<double>& v) {
  TrendTest out;
  const std::size_t n = v.size();
  if (n < 3) return out;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += (v[j] > v[i]) - (v[j] < v[i]);
  }
  const double nn = static_cast<double>(n);
  const double var = nn * (nn - 1.0) * (2.0 * nn + 5.0) / 18.0;
  out.statistic = s;
  if (s > 0) out.z = (s - 1.0) / std::sqrt(var);
  else if (s < 0) out.z = (s + 1.0) / std::sqrt(var);
  out.upward = out.z > 1.6448536269514722;
  return out;
}

ProbeReport kernel_sum_scan(int k_max, int j_max, int per_cell, double eps, std::uint64_t seed, double ceiling) {
  if (k_max < 0 || j_max < k_max || per_cell < 1) throw PreconditionError("kernel_sum_scan: bad ranges");
  ProbeReport rep;
  rep.estimate_id = EstimateId::kKernelSum;
  rep.rng_seed = seed;
  rep.ceiling = ceiling;

  struct Cell {
    int k, j;
    KernelSum worst;
    double ratio = 0.0;
  };
  std::vector<Cell> cells;
  for (int k = 0; k <= k_max; ++k) {
    for (int j = k; j <= j_max; ++j) cells.push_back({k, j, {}, 0.0});
  }
  parallel_for(cells.size(), [&](std::size_t c) {
    Cell& cell = cells[c];
    auto rng = make_rng(seed, c);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lo = std::ldexp(1.0, -cell.j);
    for (int i = 0; i <= per_cell; ++i) {
      double t, x, y;
      if (i == per_cell) {
        t = 2.0 * lo;  // window edge
        x = 0.0;
        y = 0.0;
      } else {
        t = lo * (2.0 - unit(rng));  // (lo, 2 lo]
        if (unit(rng) < 0.5) t = -t;
        x = 2.0 * std::numbers::pi * unit(rng);
        y = 2.0 * std::numbers::pi * unit(rng);
      }
      const KernelSum ks = kernel_sum_probe(cell.k, cell.j, t, x, y, eps);
      const double r = ks.lhs / ks.rhs;
      if (r >= cell.ratio) {
        cell.ratio = r;
        cell.worst = ks;
      }
    }
  });

  std::vector<double> by_k(static_cast<std::size_t>(k_max) + 1, 0.0);
  std::vector<double> by_j(static_cast<std::size_t>(j_max) + 1, 0.0);
  for (const Cell& cell : cells) {
    rep.add("k=" + std::to_string(cell.k) + ",j=" + std::to_string(cell.j), cell.worst.lhs, cell.worst.rhs);
    by_k[cell.k] = std::max(by_k[cell.k], cell.ratio);
    by_j[cell.j] = std::max(by_j[cell.j], cell.ratio);
  }
  const TrendTest tk = mann_kendall_upward(by_k);
  const TrendTest tj = mann_kendall_upward(by_j);
  rep.extras["eps"] = eps;
  rep.extras["per_cell"] = per_cell;
  rep.extras["max_by_k"] = by_k;
  rep.extras["max_by_j"] = by_j;
  rep.extras["trend_k"] = {{"S", tk.statistic}, {"Z", tk.z}, {"upward", tk.upward}};
  rep.extras["trend_j"] = {{"S", tj.statistic}, {"Z", tj.z}, {"upward", tj.upward}};
  rep.finalize();
  rep.pass = rep.pass && !tk.upward && !tj.upward;
  return rep;
}

// ---------------------------------------------------------------------------
// Commutator and product
// ---------------------------------------------------------------------------

ProbeSample commutator_probe(const SpectralField& f, const SpectralField& g, double s, int oversample) {
  if (!(s >= 1.0)) throw PreconditionError("commutator_probe: s must be >= 1");
  require_same_grid(f, g, "commutator_probe");
  const GridSpec big = doubled(f.grid());
  const SpectralField f2 = regrid(f, big);
  const SpectralField g2 = regrid(g, big);
  const SpectralField comm =
      bessel_potential(product(f2, g2, false), s) - product(f2, bessel_potential(g2, s), false);
  const double lhs = comm.l2_norm();
  const double rhs = bessel_potential(f2, s).l2_norm() * linf_norm(g2, oversample) +
                     (linf_norm(f2, oversample) + grad_linf_norm(f2, oversample)) *
                         bessel_potential(g2, s - 1.0).l2_norm();
  return {"", lhs, rhs, safe_ratio(lhs, rhs)};
}

ProbeSample product_probe(const SpectralField& f, const SpectralField& g, double s, int oversample) {
  if (!(s >= 0.0)) throw PreconditionError("product_probe: s must be >= 0");
  require_same_grid(f, g, "product_probe");
  const GridSpec big = doubled(f.grid());
  const SpectralField f2 = regrid(f, big);
  const SpectralField g2 = regrid(g, big);
  const double lhs = sobolev_norm(product(f2, g2, false), s);
  const double rhs = sobolev_norm(f2, s) * linf_norm(g2, oversample) + linf_norm(f2, oversample) * sobolev_norm(g2, s);
  return {"", lhs, rhs, safe_ratio(lhs, rhs)};
}

namespace {

template <class Probe>
ProbeReport pair_sweep(EstimateId id, Probe probe, double s, int samples, std::uint64_t seed,
                       const PairSweepConfig& cfg) {
  if (samples < 1) throw PreconditionError("sweep: samples must be >= 1");
  const GridSpec grid = GridSpec::square(cfg.grid_modes);
  ProbeReport rep;
  rep.estimate_id = id;
  rep.rng_seed = seed;
  rep.ceiling = cfg.ceiling;
  std::vector<ProbeSample> out(static_cast<std::size_t>(samples));
  parallel_for(out.size(), [&](std::size_t i) {
    auto rng = make_rng(seed, i);
    const SpectralField f = random_field(grid, {.sigma = cfg.sigma}, rng);
    const SpectralField g = random_field(grid, {.sigma = cfg.sigma}, rng);
    out[i] = probe(f, g, s, grid.oversample);
    out[i].input = "sample=" + std::to_string(i);
  });
  rep.samples = std::move(out);
  rep.extras["s"] = s;
  rep.extras["grid_modes"] = cfg.grid_modes;
  rep.extras["sigma"] = cfg.sigma;
  rep.finalize();
  return rep;
}

}  // namespace

ProbeReport commutator_sweep(double s, int samples, std::uint64_t seed, const PairSweepConfig& cfg) {
  return pair_sweep(EstimateId::kCommutator, commutator_probe, s, samples, seed, cfg);
}

ProbeReport product_sweep(double s, int samples, std::uint64_t seed, const PairSweepConfig& cfg) {
  return pair_sweep(EstimateId::kProduct, product_probe, s, samples, seed, cfg);
}

// ---------------------------------------------------------------------------
// Trajectory probes
// ---------------------------------------------------------------------------

namespace {

void require_trajectory(const Trajectory& traj, std::size_t min_points, const char* who) {
  if (traj.times.size() < min_points || traj.states.size() != traj.times.size() ||
      traj.diagnostics.size() != traj.times.size()) {
    throw PreconditionError(std::string(who) + ": trajectory too short or inconsistent");
  }
}

// First derivative at every node, second order on nonuniform spacing.
std::vector<double> derivative(const std::vector<double>& t, const std::vector<double>& f) {
  const std::size_t n = t.size();
  std::vector<double> d(n, 0.0);
  if (n == 2) {
    d[0] = d[1] = (f[1] - f[0]) / (t[1] - t[0]);
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = t[i] - t[i - 1];
    const double h2 = t[i + 1] - t[i];
    d[i] = -h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] + h1 / (h2 * (h1 + h2)) * f[i + 1];
  }
  {
    const double h1 = t[1] - t[0];
    const double h2 = t[2] - t[1];
    d[0] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] - h1 / (h2 * (h1 + h2)) * f[2];
  }
  {
    const double h1 = t[n - 2] - t[n - 3];
    const double h2 = t[n - 1] - t[n - 2];
    d[n - 1] = h2 / (h1 * (h1 + h2)) * f[n - 3] - (h1 + h2) / (h1 * h2) * f[n - 2] +
               (2 * h2 + h1) / (h2 * (h1 + h2)) * f[n - 1];
  }
  return d;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
  return out;
}

std::string time_label(double t) { return label("T", t); }

}  // namespace

std::vector<double> hs_series(const Trajectory& traj, double s) {
  std::vector<double> out(traj.states.size());
  const bool reuse = s == traj.s && traj.diagnostics.size() == traj.states.size();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = reuse ? traj.diagnostics[i].hs : sobolev_norm(traj.states[i], s);
  }
  return out;
}

std::vector<double> g_series(const Trajectory& traj) {
  std::vector<double> rate(traj.diagnostics.size());
  for (std::size_t i = 0; i < rate.size(); ++i) rate[i] = traj.diagnostics[i].linf + traj.diagnostics[i].grad_linf;
  return cumulative_trapezoid(traj.times, rate);
}

ProbeReport l1_linf_probe(const Trajectory& traj, double s, double ceiling) {
  require_trajectory(traj, 2, "l1_linf_probe");
  const std::size_t n = traj.times.size();
  std::vector<double> linf(n), flux(n);
  for (std::size_t i = 0; i < n; ++i) {
    linf[i] = traj.diagnostics[i].linf;
    const SpectralField w2 = regrid(traj.states[i], doubled(traj.states[i].grid()));
    flux[i] = 0.5 * sobolev_norm(product(w2, w2, false), s);
  }
  const std::vector<double> hs = hs_series(traj, s);
  const std::vector<double> l1 = cumulative_trapezoid(traj.times, linf);
  const std::vector<double> f1 = cumulative_trapezoid(traj.times, flux);
  ProbeReport rep;
  rep.estimate_id = EstimateId::kL1Linf;
  rep.ceiling = ceiling;
  double sup = hs[0];
  for (std::size_t i = 1; i < n; ++i) {
    sup = std::max(sup, hs[i]);
    const double T = traj.times[i] - traj.times[0];
    rep.add(time_label(T), l1[i], std::sqrt(T) * (sup + f1[i]));
  }
  rep.extras["s"] = s;
  rep.finalize();
  return rep;
}

ProbeReport energy_probe(const Trajectory& traj, double s, double ceiling) {
  require_trajectory(traj, 2, "energy_probe");
  const std::size_t n = traj.times.size();
  const std::vector<double> hs = hs_series(traj, s);
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = hs[i] * hs[i];
  const std::vector<double> de = derivative(traj.times, e);
  const std::vector<double> g = g_series(traj);

  auto differential = nlohmann::ordered_json::array();
  double c0_diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double denom = (traj.diagnostics[i].linf + traj.diagnostics[i].grad_linf) * e[i];
    const double c = std::max(0.0, de[i]) == 0.0 ? 0.0 : safe_ratio(std::max(0.0, de[i]), denom);
    c0_diff = std::max(c0_diff, c);
    differential.push_back({{"t", traj.times[i]}, {"dE_dt", de[i]}, {"c0", c}});
  }

  ProbeReport rep;
  rep.estimate_id = EstimateId::kEnergy;
  rep.ceiling = ceiling;
  double sup = e[0];
  for (std::size_t i = 1; i < n; ++i) {
    sup = std::max(sup, e[i]);
    rep.add(time_label(traj.times[i] - traj.times[0]), std::max(0.0, sup - e[0]), g[i] * sup);
  }
  rep.extras["s"] = s;
  rep.extras["c0_differential_max"] = c0_diff;
  rep.extras["c0_differential"] = differential;
  rep.finalize();
  return rep;
}

ProbeReport gT_probe(const Trajectory& traj, double s, double ceiling) {
  require_trajectory(traj, 2, "gT_probe");
  const std::vector<double> hs = hs_series(traj, s);
  const std::vector<double> g = g_series(traj);
  ProbeReport rep;
  rep.estimate_id = EstimateId::kGT;
  rep.ceiling = ceiling;
  double sup = hs[0];
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    sup = std::max(sup, hs[i]);
    const double T = traj.times[i] - traj.times[0];
    rep.add(time_label(T), g[i], std::sqrt(T) * (1.0 + g[i]) * sup);
  }
  rep.extras["s"] = s;
  rep.extras["g_T"] = g.back();
  rep.finalize();
  return rep;
}

ProbeReport lemma52_probe(const SpectralField& u0, double s, double a_s, const SolveConfig& base,
                          std::optional<double> c_s, int min_steps) {
  if (min_steps < 2) throw PreconditionError("lemma52_probe: min_steps must be >= 2");
  ProbeReport rep;
  rep.estimate_id = EstimateId::kLemma52;
  rep.ceiling = 1.0;
  const double T = existence_time(u0, s, a_s);
  const double w0 = sobolev_norm(u0, s);
  rep.extras["s"] = s;
  rep.extras["A_s"] = a_s;
  rep.extras["T"] = T;
  rep.extras["w0_norm"] = w0;

  SolveConfig cfg = base;
  cfg.horizon = T;
  cfg.dt = std::min(base.dt, T / min_steps);
  cfg.s = s;
  Trajectory traj;
  try {
    traj = solve_ivp(u0, cfg);
  } catch (const BlowUpError& e) {
    rep.extras["failure"] = std::string("blow-up: ") + e.what();
    rep.pass = false;
    return rep;
  } catch (const ResolutionError& e) {
    rep.extras["failure"] = std::string("resolution: ") + e.what();
    rep.pass = false;
    return rep;
  } catch (const PreconditionError& e) {
    rep.extras["failure"] = std::string("precondition: ") + e.what();
    rep.pass = false;
    return rep;
  }
  const std::vector<double> hs = hs_series(traj, s);
  const double sup = *std::max_element(hs.begin(), hs.end());
  const double cs = c_s ? *c_s : gT_probe(traj, s).fitted_constant;
  const double gT = g_series(traj).back();
  rep.add("sup_hs <= 2 |w0|", sup, 2.0 * w0);
  rep.add("g(T) <= 8/3 C_s |w0|", gT, 8.0 / 3.0 * cs * w0);
  rep.extras["C_s"] = cs;
  rep.extras["C_s_fitted"] = !c_s.has_value();
  rep.extras["g_T"] = gT;
  rep.extras["sup_hs"] = sup;
  rep.extras["dt"] = cfg.dt;
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Weyl inequality
// ---------------------------------------------------------------------------

ProbeReport weyl_scan(int quadratics, double eps, int log2_min, int log2_max, std::uint64_t seed,
                      double octave_factor, double ceiling) {
  if (quadratics < 1 || log2_min < 0 || log2_max <= log2_min || log2_max > 24 || !(eps > 0.0)) {
    throw PreconditionError("weyl_scan: bad parameters");
  }
  const std::size_t octaves = static_cast<std::size_t>(log2_max - log2_min + 1);
  std::vector<arith::RealQuadratic> fs(static_cast<std::size_t>(quadratics));
  {
    auto rng = make_rng(seed, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& f : fs) {
      f.alpha = unit(rng);
      f.beta = unit(rng);
    }
  }
  // ratio[i][p]
  std::vector<std::vector<double>> ratio(fs.size(), std::vector<double>(octaves));
  std::vector<std::vector<double>> absval(fs.size(), std::vector<double>(octaves));
  std::vector<std::vector<double>> bound(fs.size(), std::vector<double>(octaves));
  parallel_for(fs.size(), [&](std::size_t i) {
    for (std::size_t p = 0; p < octaves; ++p) {
      const std::int64_t N = std::int64_t{1} << (log2_min + static_cast<int>(p));
      absval[i][p] = std::abs(arith::weyl_sum(fs[i], N));
      bound[i][p] = arith::weyl_bound_rhs(fs[i], N, eps, static_cast<double>(N));
      ratio[i][p] = absval[i][p] / bound[i][p];
    }
  });

  ProbeReport rep;
  rep.estimate_id = EstimateId::kWeyl;
  rep.rng_seed = seed;
  rep.ceiling = ceiling;
  std::vector<double> by_n(octaves, 0.0);
  for (std::size_t p = 0; p < octaves; ++p) {
    std::size_t worst = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (ratio[i][p] > ratio[worst][p]) worst = i;
    }
    by_n[p] = ratio[worst][p];
    const std::int64_t N = std::int64_t{1} << (log2_min + static_cast<int>(p));
    std::ostringstream in;
    in.precision(17);
    in << "N=" << N << ",alpha=" << fs[worst].alpha << ",beta=" << fs[worst].beta;
    rep.add(in.str(), absval[worst][p], bound[worst][p]);
  }
  const double earlier = *std::max_element(by_n.begin(), by_n.end() - 1);
  const bool octave_ok = by_n.back() <= octave_factor * earlier;
  const TrendTest trend = mann_kendall_upward(by_n);
  rep.extras["eps"] = eps;
  rep.extras["quadratics"] = quadratics;
  rep.extras["max_by_N"] = by_n;
  rep.extras["last_octave_over_earlier"] = by_n.back() / earlier;
  rep.extras["trend"] = {{"S", trend.statistic}, {"Z", trend.z}, {"upward", trend.upward}};
  rep.finalize();
  rep.pass = rep.pass && octave_ok && !trend.upward;
  return rep;
}

}  // namespace shrira
