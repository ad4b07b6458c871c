#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "shrira/spectral_field.hpp"

namespace shrira::cli {

enum ExitCode : int {
  kOk = 0,
  kCeilingBreach = 1,
  kUsage = 2,
  kNumerical = 3,
};

enum class ReportFormat { kJson, kCsv, kBoth };

/// Everything needed to re-execute a run; serialized as the run manifest.
struct RunConfig {
  std::string subcommand;
  std::vector<std::string> argv;
  /// Option name -> value as given (or default), per subcommand.
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::uint64_t rng_seed = 0;
  std::filesystem::path output_dir = "runs";
  ReportFormat report_format = ReportFormat::kJson;
};

/// Initial condition mini-language:
///   random:s=<sigma>:seed=<k>[:norm=<v>][:hs=<s>][:mean0=<0|1>][:dealias=<0|1>]
///   modes:(m,n)=re+imi,(m,n)=re,...
///   file:<path>
/// The grid applies to random and modes data; file data are regridded to it
/// when `regrid_file` is set.
SpectralField parse_initial_condition(const std::string& spec, const GridSpec& grid, bool regrid_file = true);

/// "1.5", "-2i", "0.5-1e-3i" -> complex.
Complex parse_complex(const std::string& text);

/// Entry point behind the shrira-lab executable. Output goes to `out` and
/// diagnostics to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace shrira::cli
