#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <optional>
#include <ostream>
#include <string>

#include "scenarios.hpp"
#include "sylflow/errors.hpp"
#include "sylflow/rates.hpp"
#include "sylflow/simulate.hpp"

namespace sylflow::cli {

namespace {

constexpr double kConvergedError = 1e-6;

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

// Theoretical rate matching the flow: r(K) for the plain flows, r*(K) for
// clustering; the symmetrization flow has only an upper bound.
std::optional<double> theoretical_rate(const SimulationSetup& s, double K) {
  switch (s.flow) {
    case FlowKind::kSymmetrization:
      return std::nullopt;
    case FlowKind::kClustering: {
      std::vector<Matrix> inner;
      for (const auto& g : s.inner) inner.push_back(g.laplacian());
      return clustering_rate(*s.partition.clusters, K, s.graph.laplacian(), inner).rate;
    }
    default:
      return r_of_K(s.partition.nodes, s.graph.laplacian(), K).rate;
  }
}

template <typename Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const InapplicableError& e) {
    log << "error: unsolvable problem: " << e.what() << '\n';
    return kExitUnsolvable;
  } catch (const InstabilityError& e) {
    log << "error: divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const NumericError& e) {
    log << "error: divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const ConfigError& e) {
    log << "config error at " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateProblemError& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    log << "config error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_solve(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log) {
  return guarded(log, [&] {
    const SimulationSetup setup = make_setup(cfg);
    const Trajectory tr = simulate(setup);
    const int nodes = tr.final_state.node_count;

    std::string line = "t,e_total,consensus_residual";
    for (int i = 1; i <= nodes; ++i) line += ",e_node_" + std::to_string(i);
    csv << line << '\n';
    for (const auto& s : tr.samples) {
      line = format_number(s.t) + ',' + format_number(s.e_total) + ',' + format_number(s.consensus_residual);
      for (double e : s.node_errors) line += ',' + format_number(e);
      csv << line << '\n';
    }
    csv.flush();

    const double e_final = tr.samples.back().e_total;
    const auto measured = measured_rate(tr);
    log << "case: " << to_string(tr.solvability) << '\n';
    log << "flow: " << to_string(setup.flow) << ", partition: " << to_string(setup.partition.scheme)
        << ", nodes: " << nodes << ", K: " << format_number(setup.K) << '\n';
    log << "dt: " << format_number(tr.dt) << ", steps: " << tr.steps << '\n';
    if (tr.seed) log << "seed: " << *tr.seed << '\n';
    log << "final error: " << format_number(e_final) << '\n';
    log << "final consensus residual: " << format_number(tr.samples.back().consensus_residual) << '\n';
    log << "measured rate: " << (measured ? format_number(*measured) : "unavailable (error floor)") << '\n';
    if (setup.flow == FlowKind::kSymmetrization) {
      log << "rate upper bound: " << format_number(rs_upper_bound(setup.K, setup.Ks, setup.graph)) << '\n';
    } else {
      log << "theoretical rate: " << cell(theoretical_rate(setup, setup.K)) << '\n';
    }
    log << "converged: " << (e_final <= kConvergedError ? "yes" : "no") << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_sweep(const ExperimentConfig& cfg, const std::vector<double>& k_values, std::ostream& csv,
              std::ostream& log) {
  if (k_values.empty()) {
    log << "config error: --k-values (or \"k_values\" in the config) must list at least one K\n";
    return kExitUsage;
  }
  for (std::size_t k = 0; k < k_values.size(); ++k) {
    if (!(k_values[k] > 0.0) || (k > 0 && !(k_values[k] > k_values[k - 1]))) {
      log << "config error: K values must be positive and strictly ascending\n";
      return kExitUsage;
    }
  }
  return guarded(log, [&] {
    const SimulationSetup base = make_setup(cfg);
    prepare(base);  // surfaces unsolvable data before any job starts

    struct Row {
      std::optional<double> theory, measured;
    };
    std::vector<std::future<Row>> jobs;
    for (double K : k_values) {
      jobs.push_back(std::async(std::launch::async, [&base, K] {
        SimulationSetup s = base;
        s.K = K;
        Row row;
        row.theory = theoretical_rate(s, K);
        row.measured = measured_rate(simulate(s));
        return row;
      }));
    }
    std::vector<Row> rows;
    for (auto& j : jobs) rows.push_back(j.get());

    std::optional<double> r0, lower, upper;
    if (base.flow == FlowKind::kSymmetrization) {
      // Only the upper bound exists; it depends on K and is filled per row below.
    } else if (base.flow != FlowKind::kClustering) {
      r0 = r0_limit(base.partition.nodes);
      if (const auto b = full_rank_bounds(base.partition.nodes)) {
        lower = b->lower;
        upper = b->upper;
      }
    }
    csv << "K,r_theory,r_measured,r0,bound_lower,bound_upper\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::optional<double> row_upper = upper;
      if (base.flow == FlowKind::kSymmetrization) row_upper = rs_upper_bound(k_values[k], base.Ks, base.graph);
      csv << format_number(k_values[k]) << ',' << cell(rows[k].theory) << ',' << cell(rows[k].measured) << ','
          << cell(r0) << ',' << cell(lower) << ',' << cell(row_upper) << '\n';
    }
    csv.flush();
    return static_cast<int>(kExitOk);
  });
}

int cmd_verify(std::string_view fixture, std::ostream& out, std::ostream& log) {
  const auto report = run_fixture(fixture);
  if (!report) {
    log << "error: unknown fixture '" << fixture << "' (known:";
    for (auto n : fixture_names()) log << ' ' << n;
    log << ")\n";
    return kExitUsage;
  }
  print_report(out, *report);
  return report->passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace sylflow::cli
