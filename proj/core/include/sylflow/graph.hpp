#pragma once

// Undirected, unweighted, connected communication graphs. Nodes are 1-based.

#include <utility>
#include <vector>

#include "sylflow/linalg.hpp"

namespace sylflow {

using Edge = std::pair<int, int>;

class Graph {
 public:
  /// Validates the edge list: endpoints in 1..n, no self-loops, no
  /// duplicates (in either orientation) and a connected result.
  /// Throws DimensionError / ConnectivityError.
  static Graph from_edges(int node_count, const std::vector<Edge>& edges);

  int node_count() const { return node_count_; }
  /// Normalized edges (i < j), sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }
  /// 1-based neighbor lists, ascending.
  const std::vector<int>& neighbors(int node) const;

  /// L = D - A_G.
  Matrix laplacian() const;

 private:
  Graph() = default;

  int node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// Ring 1-2-...-n-1. For n = 2 this is the single edge (1,2); n = 1 has no edges.
Graph make_cycle(int n);
Graph make_complete(int n);
Graph make_path(int n);

struct LaplacianSpectrum {
  double algebraic_connectivity;  // lambda_{n-1}(L); 0 for a single node
  double largest;                 // lambda_1(L)
};

LaplacianSpectrum laplacian_spectrum(const Graph& g);

/// lambda_{n-1}(L), the smallest nonzero Laplacian eigenvalue of a connected graph.
double algebraic_connectivity(const Graph& g);

/// Outer graph over n clusters plus one inner graph per cluster, each on n nodes.
class DoubleLayerNetwork {
 public:
  /// Throws DimensionError unless inner.size() == outer.node_count() and every
  /// inner graph has outer.node_count() nodes.
  DoubleLayerNetwork(Graph outer, std::vector<Graph> inner);

  const Graph& outer() const { return outer_; }
  const std::vector<Graph>& inner() const { return inner_; }
  int cluster_count() const { return outer_.node_count(); }

 private:
  Graph outer_;
  std::vector<Graph> inner_;
};

}  // namespace sylflow
