#pragma once

#include <stdexcept>
#include <string>

namespace shrira {

// Contract and input errors. The CLI maps these to exit code 2.
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct SymmetryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IntervalError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failures. The CLI maps these to exit code 3.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}

  /// Simulation time at which the failure was detected.
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace shrira
