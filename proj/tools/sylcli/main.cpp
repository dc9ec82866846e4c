#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

using namespace sylflow::cli;

std::vector<double> parse_k_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw ConfigError("--k-values", "'" + item + "' is not a number");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed network-flow solver for A X + X B = C"};
  app.require_subcommand(1);

  std::string config_path, out_path, k_values, fixture;
  auto* solve = app.add_subcommand("solve", "simulate one flow and write its trajectory CSV");
  solve->add_option("--config", config_path, "JSON experiment config")->required();
  solve->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "theoretical and measured rates over several K");
  sweep->add_option("--config", config_path, "JSON experiment config")->required();
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");
  sweep->add_option("--k-values", k_values, "comma-separated gains, ascending");

  auto* verify = app.add_subcommand("verify", "check a reference example");
  verify->add_option("--fixture", fixture, "example1 .. example5")->required();
  verify->add_option("--out", out_path, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  if (verify->parsed()) return cmd_verify(fixture, out, std::cerr);

  try {
    const ExperimentConfig cfg = load_config(config_path, seed_from_environment());
    if (solve->parsed()) return cmd_solve(cfg, out, std::cerr);
    const std::vector<double> ks = k_values.empty() ? cfg.k_values : parse_k_values(k_values);
    return cmd_sweep(cfg, ks, out, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error at " << e.what() << '\n';
    return kExitUsage;
  }
}
