#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace contractive::tools {

struct RunConfig {
  std::string command;
  std::optional<std::filesystem::path> map;
  std::optional<std::filesystem::path> measure;
  std::optional<std::filesystem::path> set;
  std::vector<int> depths;        ///< empty: the command's default
  int grid_J = 8;
  double angular_factor = 1.0;
  std::optional<double> p;        ///< B2 exponent, or Frostman exponent for `content`
  double alpha = 0.0;             ///< turns
  std::optional<std::filesystem::path> out;  ///< directory; stdout when absent
  std::uint64_t seed = 1;
  std::optional<double> tol;
  // cantor
  std::optional<double> K;
  std::optional<double> K1;
  std::optional<double> eta;
};

/// Exit codes.
enum Status : int { kOk = 0, kInconsistent = 1, kInputError = 2 };

/// Runs one command. JSON goes to <out>/<command>.json (stdout without --out);
/// tables go to CSV files beside it. Input errors are reported on stderr.
int run(const RunConfig& config);

/// Validates the config invariants (depths ≤ 24, J ≤ 16, required files).
void validate(const RunConfig& config);

}  // namespace contractive::tools
