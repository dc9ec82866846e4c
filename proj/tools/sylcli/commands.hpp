#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "config.hpp"

namespace sylflow::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDivergence = 2,
  kExitUnsolvable = 3,
  kExitVerifyFailed = 4,
};

/// Trajectory CSV to `csv`, human summary to `log`.
int cmd_solve(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log);

/// One row per K (ascending, positive), computed concurrently.
int cmd_sweep(const ExperimentConfig& cfg, const std::vector<double>& k_values, std::ostream& csv,
              std::ostream& log);

/// Runs a reference-example scenario; nonzero when any assertion fails.
int cmd_verify(std::string_view fixture, std::ostream& out, std::ostream& log);

/// %.17g formatting; empty string for NaN.
std::string format_number(double v);

}  // namespace sylflow::cli
