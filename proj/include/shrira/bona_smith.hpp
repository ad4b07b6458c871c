#pragma once

#include <cstdint>
#include <vector>

#include "shrira/report.hpp"
#include "shrira/solver.hpp"
#include "shrira/spectral_field.hpp"

namespace shrira {

/// rho~(x, y) = rho(sqrt(x^2 + y^2)).
struct MollifierRho {
  double operator()(double x, double y) const;
};

/// Coefficient (m, n') times rho~(m/n, n'/n).
SpectralField mollify(const SpectralField& w0, int n);

/// ||(1 - rho~(./n)) w0||_{H^s} summed mode by mode; reference for the mollifier error.
double mollifier_tail(const SpectralField& w0, int n, double s);

/// Real field with coefficients (1+m^2+n^2)^{-(s_data+1)/2} on every non-Nyquist mode.
SpectralField synthetic_decay_field(const GridSpec& grid, double s_data);

/// ||mollify(w0, n) - w0||_{H^s} for each n, with a slope fit in n that must
/// fall within `tolerance` (relative) of -(s_data - s). Errors that are
/// exactly zero are kept in the table but left out of the fit.
ProbeReport convergence_experiment(const SpectralField& w0, double s, double s_data, const std::vector<int>& n_list,
                                   double tolerance = 0.15);

/// Solves from u0 and u0 + delta p for a random p with ||p||_{H^s} = 1 and
/// records sup_t ||difference||_{H^s} against delta. No modulus is asserted;
/// the ceiling only flags a ratio blowing up as delta shrinks.
ProbeReport flow_continuity_probe(const SpectralField& u0, double s, const std::vector<double>& delta_list,
                                  const SolveConfig& cfg, std::uint64_t seed = 0, double ceiling = 100.0);

}  // namespace shrira
