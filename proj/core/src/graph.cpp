#include "sylflow/graph.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "sylflow/errors.hpp"

namespace sylflow {

Graph Graph::from_edges(int node_count, const std::vector<Edge>& edges) {
  if (node_count < 1) throw DimensionError("graph needs at least one node");

  std::set<Edge> seen;
  for (auto [i, j] : edges) {
    if (i < 1 || j < 1 || i > node_count || j > node_count) {
      throw DimensionError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                           ") references a node outside 1.." + std::to_string(node_count));
    }
    if (i == j) throw DimensionError("self-loop at node " + std::to_string(i));
    const Edge normalized{std::min(i, j), std::max(i, j)};
    if (!seen.insert(normalized).second) {
      throw DimensionError("duplicate edge (" + std::to_string(normalized.first) + "," +
                           std::to_string(normalized.second) + ")");
    }
  }

  Graph g;
  g.node_count_ = node_count;
  g.edges_.assign(seen.begin(), seen.end());
  g.adjacency_.resize(node_count);
  for (auto [i, j] : g.edges_) {
    g.adjacency_[i - 1].push_back(j);
    g.adjacency_[j - 1].push_back(i);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());

  // Breadth-first reachability from node 1.
  std::vector<bool> reached(node_count, false);
  std::vector<int> frontier{1};
  reached[0] = true;
  int count = 1;
  while (!frontier.empty()) {
    const int u = frontier.back();
    frontier.pop_back();
    for (int v : g.adjacency_[u - 1]) {
      if (!reached[v - 1]) {
        reached[v - 1] = true;
        ++count;
        frontier.push_back(v);
      }
    }
  }
  if (count != node_count) {
    throw ConnectivityError("graph is disconnected: " + std::to_string(count) + " of " +
                            std::to_string(node_count) + " nodes reachable from node 1");
  }
  return g;
}

const std::vector<int>& Graph::neighbors(int node) const {
  if (node < 1 || node > node_count_) {
    throw DimensionError("neighbors: node " + std::to_string(node) + " out of range");
  }
  return adjacency_[node - 1];
}

Matrix Graph::laplacian() const {
  Matrix l = Matrix::Zero(node_count_, node_count_);
  for (auto [i, j] : edges_) {
    l(i - 1, i - 1) += 1.0;
    l(j - 1, j - 1) += 1.0;
    l(i - 1, j - 1) -= 1.0;
    l(j - 1, i - 1) -= 1.0;
  }
  return l;
}

Graph make_cycle(int n) {
  if (n <= 2) return make_path(n);
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(1, n);
  return Graph::from_edges(n, edges);
}

Graph make_complete(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
  }
  return Graph::from_edges(n, edges);
}

Graph make_path(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

LaplacianSpectrum laplacian_spectrum(const Graph& g) {
  const Vector ev = sym_eig_desc(g.laplacian());
  const Index n = ev.size();
  return {n > 1 ? ev(n - 2) : 0.0, ev(0)};
}

double algebraic_connectivity(const Graph& g) { return laplacian_spectrum(g).algebraic_connectivity; }

DoubleLayerNetwork::DoubleLayerNetwork(Graph outer, std::vector<Graph> inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
  const int n = outer_.node_count();
  if (static_cast<int>(inner_.size()) != n) {
    throw DimensionError("double-layer network: " + std::to_string(inner_.size()) +
                         " inner graphs for " + std::to_string(n) + " clusters");
  }
  for (std::size_t i = 0; i < inner_.size(); ++i) {
    if (inner_[i].node_count() != n) {
      throw DimensionError("double-layer network: inner graph " + std::to_string(i + 1) +
                           " has " + std::to_string(inner_[i].node_count()) + " nodes, expected " +
                           std::to_string(n));
    }
  }
}

}  // namespace sylflow
