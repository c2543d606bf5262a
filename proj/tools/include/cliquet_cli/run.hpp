#pragma once

#include <string>

#include "cliquet_cli/config.hpp"

namespace cliquet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitInvariant = 4;

struct RunOutcome {
  int exit_code = kExitOk;
  /// Report on success; empty otherwise.
  std::string report;
  /// JSON error record on failure; empty otherwise.
  std::string error;
};

/// Executes the command and renders the report. Library errors are mapped to
/// exit codes and never escape.
RunOutcome run(const RunSpec& spec);

/// Exit code for an exception thrown by the library or the config layer.
int exit_code_for(const std::exception& e);

}  // namespace cliquet::cli
