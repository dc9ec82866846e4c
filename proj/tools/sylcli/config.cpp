#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "sylflow/errors.hpp"
#include "sylflow/fixtures.hpp"

namespace sylflow::cli {

namespace {

using nlohmann::json;

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t idx) {
  return path + "/" + std::to_string(idx);
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

Matrix get_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a nonempty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].empty()) {
      throw ConfigError(child(path, i), "expected a nonempty array of numbers");
    }
    if (i == 0) cols = v[i].size();
    if (v[i].size() != cols) {
      throw ConfigError(child(path, i), "row has " + std::to_string(v[i].size()) +
                                            " entries, expected " + std::to_string(cols));
    }
  }
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) =
          get_number(v[i][j], child(child(path, i), j));
    }
  }
  return m;
}

std::vector<std::vector<int>> get_index_lists(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of index arrays");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array()) throw ConfigError(child(path, i), "expected an array of indices");
    std::vector<int> group;
    for (std::size_t j = 0; j < v[i].size(); ++j) {
      group.push_back(get_int(v[i][j], child(child(path, i), j)));
    }
    out.push_back(std::move(group));
  }
  return out;
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t k = 0; k + 1 < upto; ++k) {
      if (text[k] == '\n') ++line;
    }
    throw ConfigError(origin + "line " + std::to_string(line), std::string("invalid JSON (") + e.what() + ")");
  }
}

std::string read_file(const std::filesystem::path& path, const std::string& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(field, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void parse_problem_matrices(const json& obj, const std::string& path, ExperimentConfig& cfg) {
  const json* a = find(obj, "A");
  const json* c = find(obj, "C");
  if (!a) throw ConfigError(child(path, "A"), "missing");
  if (!c) throw ConfigError(child(path, "C"), "missing");
  cfg.A = get_matrix(*a, child(path, "A"));
  cfg.C = get_matrix(*c, child(path, "C"));
  if (const json* b = find(obj, "B")) {
    cfg.B = get_matrix(*b, child(path, "B"));
  } else if (const json* lyap = find(obj, "lyapunov"); lyap && lyap->is_boolean() && *lyap) {
    cfg.B = cfg.A.transpose();
  } else {
    throw ConfigError(child(path, "B"), "missing (or set \"lyapunov\": true for B = A^T)");
  }
}

void parse_problem(const json& v, const std::string& path, const std::filesystem::path& base,
                   ExperimentConfig& cfg) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  if (const json* fx = find(v, "fixture")) {
    const std::string name = get_string(*fx, child(path, "fixture"));
    SylvesterProblem p = [&]() -> SylvesterProblem {
      if (name == "example1") return fixtures::example1();
      if (name == "example2-1") return fixtures::example2(1);
      if (name == "example2-2") return fixtures::example2(2);
      if (name == "example4") return fixtures::example4();
      throw ConfigError(child(path, "fixture"),
                        "unknown fixture '" + name +
                            "' (known: example1, example2-1, example2-2, example4)");
    }();
    cfg.A = p.A();
    cfg.B = p.B();
    cfg.C = p.C();
    return;
  }
  if (const json* file = find(v, "file")) {
    const std::string field = child(path, "file");
    std::filesystem::path fp = get_string(*file, field);
    if (fp.is_relative()) fp = base / fp;
    const std::string text = read_file(fp, field);
    const json inner = parse_json(text, fp.string() + " ");
    if (!inner.is_object()) throw ConfigError(fp.string(), "expected an object with A, B, C");
    parse_problem_matrices(inner, fp.string() + ":", cfg);
    return;
  }
  parse_problem_matrices(v, path, cfg);
}

GraphSpec parse_graph(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected a graph object");
  GraphSpec g;
  if (const json* kind = find(v, "kind")) g.kind = get_string(*kind, child(path, "kind"));
  if (g.kind != "cycle" && g.kind != "complete" && g.kind != "path" && g.kind != "custom") {
    throw ConfigError(child(path, "kind"), "unknown graph kind '" + g.kind +
                                               "' (cycle, complete, path, custom)");
  }
  if (const json* n = find(v, "n")) {
    g.n = get_int(*n, child(path, "n"));
    if (*g.n < 1) throw ConfigError(child(path, "n"), "must be >= 1");
  }
  if (const json* edges = find(v, "edges")) {
    const std::string ep = child(path, "edges");
    if (!edges->is_array()) throw ConfigError(ep, "expected an array of [i, j] pairs");
    for (std::size_t k = 0; k < edges->size(); ++k) {
      const json& e = (*edges)[k];
      if (!e.is_array() || e.size() != 2) throw ConfigError(child(ep, k), "expected [i, j]");
      g.edges.emplace_back(get_int(e[0], child(child(ep, k), 0)), get_int(e[1], child(child(ep, k), 1)));
    }
  }
  if (g.kind == "custom" && !find(v, "edges")) throw ConfigError(child(path, "edges"), "custom graphs need edges");
  return g;
}

void parse_partition(const json& v, const std::string& path, ExperimentConfig& cfg) {
  std::string name;
  const json* opts = nullptr;
  if (v.is_string()) {
    name = v.get<std::string>();
  } else if (v.is_object()) {
    const json* s = find(v, "scheme");
    if (!s) throw ConfigError(child(path, "scheme"), "missing");
    name = get_string(*s, child(path, "scheme"));
    opts = &v;
  } else {
    throw ConfigError(path, "expected a scheme name or an object with \"scheme\"");
  }
  const auto scheme = parse_partition_scheme(name);
  if (!scheme) {
    throw ConfigError(opts ? child(path, "scheme") : path,
                      "unknown partition '" + name +
                          "' (bc-column, ac-row, grouped, high-res, lyapunov-sym, "
                          "full-row-column, clustering)");
  }
  cfg.scheme = *scheme;
  if (opts) {
    if (const json* g = find(*opts, "groups")) {
      cfg.partition_options.groups = get_index_lists(*g, child(path, "groups"));
    }
    if (const json* rb = find(*opts, "row_blocks")) {
      cfg.partition_options.row_blocks = get_index_lists(*rb, child(path, "row_blocks"));
    }
  }
  if (cfg.scheme == PartitionScheme::kGrouped && cfg.partition_options.groups.empty()) {
    throw ConfigError(child(path, "groups"), "the grouped partition needs column groups");
  }
}

void parse_integrator(const json& v, const std::string& path, IntegratorSettings& out) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  if (const json* dt = find(v, "dt")) {
    out.dt = get_number(*dt, child(path, "dt"));
    if (!(*out.dt > 0.0)) throw ConfigError(child(path, "dt"), "must be positive");
  }
  if (const json* t = find(v, "t_end")) {
    out.t_end = get_number(*t, child(path, "t_end"));
    if (!(out.t_end > 0.0)) throw ConfigError(child(path, "t_end"), "must be positive");
  }
  if (const json* s = find(v, "sample_stride")) {
    out.sample_stride = get_int(*s, child(path, "sample_stride"));
    if (out.sample_stride < 1) throw ConfigError(child(path, "sample_stride"), "must be >= 1");
  }
}

void parse_init(const json& v, const std::string& path, InitSettings& out) {
  std::string kind;
  if (v.is_string()) {
    kind = v.get<std::string>();
  } else if (v.is_object()) {
    if (const json* k = find(v, "kind")) kind = get_string(*k, child(path, "kind"));
    else kind = "zero";
    if (const json* seed = find(v, "seed")) {
      if (!seed->is_number_unsigned()) throw ConfigError(child(path, "seed"), "expected an unsigned integer");
      out.seed = seed->get<std::uint64_t>();
    }
  } else {
    throw ConfigError(path, "expected \"zero\", \"random\" or an object");
  }
  if (kind == "zero") out.kind = InitSettings::Kind::kZero;
  else if (kind == "random") out.kind = InitSettings::Kind::kRandom;
  else throw ConfigError(v.is_string() ? path : child(path, "kind"), "unknown init '" + kind + "' (zero, random)");
}

}  // namespace

Graph build_graph(const GraphSpec& spec, int default_nodes) {
  const int n = spec.n.value_or(default_nodes);
  if (spec.kind == "cycle") return make_cycle(n);
  if (spec.kind == "complete") return make_complete(n);
  if (spec.kind == "path") return make_path(n);
  return Graph::from_edges(n, spec.edges);
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir,
                              std::optional<std::uint64_t> seed_override) {
  const json root = parse_json(text, "");
  if (!root.is_object()) throw ConfigError("line 1", "the config must be a JSON object");
  ExperimentConfig cfg;

  const json* problem = find(root, "problem");
  if (!problem) throw ConfigError("/problem", "missing");
  parse_problem(*problem, "/problem", base_dir, cfg);

  if (const json* p = find(root, "partition")) parse_partition(*p, "/partition", cfg);
  if (const json* g = find(root, "graph")) cfg.graph = parse_graph(*g, "/graph");
  if (const json* inner = find(root, "inner_graphs")) {
    if (inner->is_object()) {
      cfg.inner.push_back(parse_graph(*inner, "/inner_graphs"));
    } else if (inner->is_array()) {
      for (std::size_t k = 0; k < inner->size(); ++k) {
        cfg.inner.push_back(parse_graph((*inner)[k], child("/inner_graphs", k)));
      }
    } else {
      throw ConfigError("/inner_graphs", "expected a graph object or an array of them");
    }
  }
  if (const json* f = find(root, "flow")) {
    const std::string name = get_string(*f, "/flow");
    const auto kind = parse_flow_kind(name);
    if (!kind) throw ConfigError("/flow", "unknown flow '" + name + "' (cp, cps, ls, augmented, clustering)");
    cfg.flow = *kind;
  }
  if (const json* k = find(root, "K")) {
    cfg.K = get_number(*k, "/K");
    if (!(cfg.K > 0.0)) throw ConfigError("/K", "must be positive");
  }
  if (const json* ks = find(root, "Ks")) {
    cfg.Ks = get_number(*ks, "/Ks");
    if (!(cfg.Ks >= 0.0)) throw ConfigError("/Ks", "must be >= 0");
  }
  if (const json* integ = find(root, "integrator")) parse_integrator(*integ, "/integrator", cfg.integrator);
  if (const json* init = find(root, "init")) parse_init(*init, "/init", cfg.init);
  if (const json* kv = find(root, "k_values")) {
    if (!kv->is_array()) throw ConfigError("/k_values", "expected an array of numbers");
    for (std::size_t k = 0; k < kv->size(); ++k) cfg.k_values.push_back(get_number((*kv)[k], child("/k_values", k)));
  }
  if (seed_override) cfg.init.seed = *seed_override;

  if (cfg.flow == FlowKind::kSymmetrization && !find(root, "Ks")) {
    throw ConfigError("/Ks", "the cps flow needs Ks");
  }
  if (cfg.flow == FlowKind::kClustering && cfg.inner.empty()) {
    throw ConfigError("/inner_graphs", "the clustering flow needs inner graphs");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override) {
  const std::string text = read_file(path, "--config");
  try {
    return parse_config(text, path.parent_path(), seed_override);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + " " + e.where(),
                      std::string(e.what()).substr(e.where().size() + 2));
  }
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* raw = std::getenv("SYLFLOW_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string s(raw);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 20) {
    throw ConfigError("SYLFLOW_SEED", "expected an unsigned integer, got '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError("SYLFLOW_SEED", "value out of range: '" + s + "'");
  }
}

SimulationSetup make_setup(const ExperimentConfig& cfg) {
  auto wrap = [](const char* where, auto&& fn) {
    try {
      return fn();
    } catch (const InapplicableError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(where, e.what());
    }
  };
  const SylvesterProblem problem = wrap("/problem", [&] { return cfg.problem(); });
  const bool clustering = cfg.scheme == PartitionScheme::kClustering;
  if (clustering != (cfg.flow == FlowKind::kClustering)) {
    throw ConfigError("/flow", "the clustering flow requires the clustering partition and vice versa");
  }
  if (cfg.flow == FlowKind::kAugmented && cfg.scheme != PartitionScheme::kFullRowColumn) {
    throw ConfigError("/flow", "the augmented flow requires the full-row-column partition");
  }
  if (cfg.flow == FlowKind::kSymmetrization && !problem.is_square()) {
    throw ConfigError("/flow", "the cps flow requires a square problem");
  }

  int default_nodes = 0;
  switch (cfg.scheme) {
    case PartitionScheme::kBcColumn: default_nodes = static_cast<int>(problem.m()); break;
    case PartitionScheme::kAcRow: default_nodes = static_cast<int>(problem.n()); break;
    case PartitionScheme::kGrouped: default_nodes = static_cast<int>(cfg.partition_options.groups.size()); break;
    case PartitionScheme::kHighRes: default_nodes = static_cast<int>(problem.n() * problem.n()); break;
    case PartitionScheme::kLyapunovSym:
      default_nodes = static_cast<int>(problem.n() * (problem.n() + 1) / 2);
      break;
    case PartitionScheme::kFullRowColumn:
      default_nodes = cfg.partition_options.row_blocks.empty()
                          ? static_cast<int>(problem.n())
                          : static_cast<int>(cfg.partition_options.row_blocks.size());
      break;
    case PartitionScheme::kClustering: default_nodes = static_cast<int>(problem.n()); break;
  }
  Graph graph = wrap("/graph", [&] { return build_graph(cfg.graph, default_nodes); });
  std::vector<Graph> inner;
  if (clustering) {
    const int n = static_cast<int>(problem.n());
    if (cfg.inner.size() != 1 && cfg.inner.size() != static_cast<std::size_t>(n)) {
      throw ConfigError("/inner_graphs", "give one graph shared by all clusters or exactly " +
                                             std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
      const GraphSpec& spec = cfg.inner.size() == 1 ? cfg.inner.front() : cfg.inner[i];
      inner.push_back(wrap("/inner_graphs", [&] { return build_graph(spec, n); }));
    }
  }
  Partition partition = wrap("/partition", [&] {
    return make_partition(problem, cfg.scheme, cfg.partition_options, &graph);
  });
  if (!clustering && graph.node_count() != partition.node_count()) {
    throw ConfigError("/graph/n", "graph has " + std::to_string(graph.node_count()) +
                                      " nodes but the partition has " +
                                      std::to_string(partition.node_count()));
  }
  return SimulationSetup{cfg.flow,          problem, std::move(partition), std::move(graph),
                         std::move(inner),  cfg.K,   cfg.Ks,               cfg.integrator,
                         cfg.init};
}

}  // namespace sylflow::cli
