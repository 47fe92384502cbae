#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace tdsqaoa {

using Vertex = int;
using VertexSet = std::vector<Vertex>;  // sorted ascending

/// Undirected simple graph with an edge list and adjacency lists.
class Graph {
 public:
  Graph() = default;

  /// Throws DomainError on self-loops, duplicate edges or out-of-range endpoints.
  Graph(int n_vertices, const std::vector<std::pair<Vertex, Vertex>>& edges);

  int n_vertices() const { return n_; }
  int n_edges() const { return static_cast<int>(edges_.size()); }

  /// Edges normalized to (min, max), in insertion order.
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }

  /// Open neighborhood N(v), sorted ascending.
  const std::vector<Vertex>& neighbors(Vertex v) const;

  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  bool has_isolated_vertex() const;

  /// Open-neighborhood bitmask of v (bit u set for u in N(v)). Requires n <= 64.
  std::uint64_t neighbor_mask(Vertex v) const;

 private:
  void check_vertex(Vertex v) const;

  int n_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

struct DegreePartition {
  VertexSet v0;
  VertexSet v1;
  VertexSet v2;
  VertexSet v_ge3;
};

/// Result of an exhaustive minimum-set search.
struct MinimumSets {
  int size = 0;
  std::vector<VertexSet> sets;  // every set of minimum cardinality, in mask order
};

bool is_total_dominating_set(const Graph& g, const VertexSet& d);
bool is_dominating_set(const Graph& g, const VertexSet& d);

/// Exhaustive search; n <= 24. Throws InfeasibleError if g has an isolated vertex.
MinimumSets minimum_tds_bruteforce(const Graph& g);

/// Exhaustive search; n <= 24.
MinimumSets minimum_ds_bruteforce(const Graph& g);

DegreePartition degree_partition(const Graph& g);

/// The 6-vertex, 7-edge benchmark instance used throughout the experiments.
Graph benchmark_graph();

// Bitmask helpers shared with the oracles and metrics. Bit v <-> vertex v.
std::uint64_t to_mask(const VertexSet& d, int n_vertices);
VertexSet from_mask(std::uint64_t mask);
bool is_total_dominating_mask(const Graph& g, std::uint64_t mask);
bool is_dominating_mask(const Graph& g, std::uint64_t mask);

}  // namespace tdsqaoa
