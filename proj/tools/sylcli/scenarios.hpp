#pragma once

// Reproduction scenarios for the reference examples and the acceptance
// criteria, shared by `sylflow verify` and the acceptance test binary.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sylflow/partition.hpp"

namespace sylflow::cli {

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  void add(std::string name, bool passed, std::string detail = {});
};

inline constexpr int kCriterionCount = 8;

/// Runs acceptance criterion `id` (1..8).
Report run_criterion(int id);

const std::vector<std::string_view>& fixture_names();

/// Runs the scenario behind a reference example; empty for unknown names.
std::optional<Report> run_fixture(std::string_view name);

/// One "[PASS]/[FAIL] name: detail" line per check, then a summary line.
void print_report(std::ostream& os, const Report& report);

/// Random well-conditioned 3x3 instances. `unique` selects a nonsingular
/// operator; otherwise exactly one eigenvalue sum a_i + b_j vanishes and C is
/// built from a random X so the equation stays consistent.
SylvesterProblem random_consistent_problem(std::mt19937_64& rng, bool unique, int n = 3);

}  // namespace sylflow::cli
