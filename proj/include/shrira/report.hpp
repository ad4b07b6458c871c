#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace shrira {

inline constexpr const char* kReportSchema = "shrira-lab/report-v1";

enum class EstimateId {
  kStrichartzLocal,
  kStrichartzGlobal,
  kKernelSum,
  kL1Linf,
  kCommutator,
  kProduct,
  kEnergy,
  kGT,
  kLemma52,
  kWeyl,
  kDirichlet,
  kBonaSmithConvergence,
  kFlowContinuity,
};

std::string to_string(EstimateId id);

struct ProbeSample {
  std::string input;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct SlopeFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
};

/// Least squares fit of log y = exponent * log x + intercept. Needs at least
/// three points, all coordinates positive.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

/// lhs / rhs with 0/0 := 0. Throws DomainError for lhs > 0 = rhs.
double safe_ratio(double lhs, double rhs);

struct ProbeReport {
  EstimateId estimate_id = EstimateId::kStrichartzLocal;
  std::vector<ProbeSample> samples;
  /// Max ratio over samples.
  double fitted_constant = 0.0;
  std::optional<SlopeFit> slope_fit;
  double ceiling = 1.0;
  std::optional<double> slope_ceiling;
  std::optional<double> slope_floor;
  bool pass = false;
  std::uint64_t rng_seed = 0;
  /// Probe-specific numbers (fits, convergence checks); kept out of the pass rule.
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();

  void add(std::string input, double lhs, double rhs);
  /// Sets fitted_constant and pass from the samples, ceilings and slope fit.
  void finalize();

  nlohmann::ordered_json to_json() const;
  /// input,lhs,rhs,ratio rows with a header line.
  std::string to_csv() const;
};

}  // namespace shrira
