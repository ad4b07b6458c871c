#include "shrira/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "shrira/errors.hpp"

namespace shrira {

std::string to_string(EstimateId id) {
  switch (id) {
    case EstimateId::kStrichartzLocal: return "strichartz_local";
    case EstimateId::kStrichartzGlobal: return "strichartz_global";
    case EstimateId::kKernelSum: return "kernel_sum";
    case EstimateId::kL1Linf: return "l1_linf";
    case EstimateId::kCommutator: return "commutator";
    case EstimateId::kProduct: return "product";
    case EstimateId::kEnergy: return "energy";
    case EstimateId::kGT: return "g_T";
    case EstimateId::kLemma52: return "bootstrap";
    case EstimateId::kWeyl: return "weyl";
    case EstimateId::kDirichlet: return "dirichlet";
    case EstimateId::kBonaSmithConvergence: return "bona_smith_convergence";
    case EstimateId::kFlowContinuity: return "flow_continuity";
  }
  return "unknown";
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw PreconditionError("fit_slope: need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  SlopeFit fit;
  fit.x_min = points.front().first;
  fit.x_max = points.front().first;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw PreconditionError("fit_slope: points must be positive");
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
    fit.x_min = std::min(fit.x_min, x);
    fit.x_max = std::max(fit.x_max, x);
  }
  const double n = static_cast<double>(points.size());
  const double cxx = sxx - sx * sx / n;
  const double cxy = sxy - sx * sy / n;
  const double cyy = syy - sy * sy / n;
  if (cxx <= 0.0) throw PreconditionError("fit_slope: x values must not all coincide");
  fit.exponent = cxy / cxx;
  fit.intercept = (sy - fit.exponent * sx) / n;
  fit.r2 = cyy <= 1e-300 ? 1.0 : (cxy * cxy) / (cxx * cyy);
  return fit;
}

double safe_ratio(double lhs, double rhs) {
  if (lhs == 0.0) return 0.0;
  if (rhs == 0.0) throw DomainError("ratio with zero right-hand side and nonzero left-hand side");
  return lhs / rhs;
}

void ProbeReport::add(std::string input, double lhs, double rhs) {
  samples.push_back({std::move(input), lhs, rhs, safe_ratio(lhs, rhs)});
}

void ProbeReport::finalize() {
  fitted_constant = 0.0;
  for (const auto& s : samples) {
    if (!std::isfinite(s.ratio) || s.ratio < 0.0) {
      throw DomainError("probe " + to_string(estimate_id) + ": non-finite or negative ratio");
    }
    fitted_constant = std::max(fitted_constant, s.ratio);
  }
  pass = fitted_constant <= ceiling;
  if (slope_fit) {
    if (slope_ceiling) pass = pass && slope_fit->exponent <= *slope_ceiling;
    if (slope_floor) pass = pass && slope_fit->exponent >= *slope_floor;
  }
}

nlohmann::ordered_json ProbeReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["estimate_id"] = to_string(estimate_id);
  j["rng_seed"] = rng_seed;
  j["fitted_constant"] = fitted_constant;
  j["ceiling"] = ceiling;
  if (slope_fit) {
    j["slope_fit"] = {{"exponent", slope_fit->exponent},
                      {"intercept", slope_fit->intercept},
                      {"r2", slope_fit->r2},
                      {"range", {slope_fit->x_min, slope_fit->x_max}}};
  } else {
    j["slope_fit"] = nullptr;
  }
  j["slope_ceiling"] = slope_ceiling ? nlohmann::ordered_json(*slope_ceiling) : nullptr;
  j["slope_floor"] = slope_floor ? nlohmann::ordered_json(*slope_floor) : nullptr;
  j["pass"] = pass;
  j["extras"] = extras;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& s : samples) {
    rows.push_back({{"input", s.input}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"ratio", s.ratio}});
  }
  j["samples"] = std::move(rows);
  return j;
}

std::string ProbeReport::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "input,lhs,rhs,ratio\n";
  for (const auto& s : samples) {
    out << '"' << s.input << '"' << ',' << s.lhs << ',' << s.rhs << ',' << s.ratio << '\n';
  }
  return out.str();
}

}  // namespace shrira
