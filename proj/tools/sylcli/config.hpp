#pragma once

// JSON experiment configuration.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sylflow/graph.hpp"
#include "sylflow/partition.hpp"
#include "sylflow/simulate.hpp"

namespace sylflow::cli {

/// Malformed configuration. `where` is "line N" for syntax errors or the JSON
/// pointer of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct GraphSpec {
  std::string kind = "cycle";  // cycle | complete | path | custom
  std::optional<int> n;        // defaults to the node count the partition needs
  std::vector<Edge> edges;     // custom only, 1-based
};

Graph build_graph(const GraphSpec& spec, int default_nodes);

struct ExperimentConfig {
  Matrix A, B, C;
  PartitionScheme scheme = PartitionScheme::kBcColumn;
  PartitionOptions partition_options;
  GraphSpec graph;
  std::vector<GraphSpec> inner;  // clustering: one per cluster, or a single shared spec
  FlowKind flow = FlowKind::kConsensusProjection;
  double K = 1.0;
  double Ks = 0.0;
  IntegratorSettings integrator;
  InitSettings init;
  std::vector<double> k_values;  // sweep default when --k-values is absent

  SylvesterProblem problem() const { return {A, B, C}; }
};

/// Parses config text. Relative problem file paths resolve against `base_dir`.
/// `seed_override` replaces init.seed (the SYLFLOW_SEED variable).
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {},
                              std::optional<std::uint64_t> seed_override = std::nullopt);

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override = std::nullopt);

/// Reads SYLFLOW_SEED; throws ConfigError when it is set but not an unsigned integer.
std::optional<std::uint64_t> seed_from_environment();

/// Partition, graphs and settings assembled for simulation. Throws
/// ConfigError for selector combinations that cannot work together.
SimulationSetup make_setup(const ExperimentConfig& cfg);

}  // namespace sylflow::cli
