#include "tdsqaoa/graph.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "tdsqaoa/errors.hpp"

namespace tdsqaoa {

Graph::Graph(int n_vertices, const std::vector<std::pair<Vertex, Vertex>>& edges)
    : n_(n_vertices), adjacency_(n_vertices < 0 ? 0 : n_vertices) {
  if (n_vertices < 0) throw DomainError("negative vertex count");
  std::set<std::pair<Vertex, Vertex>> seen;
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) {
      throw DomainError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                        ") has an endpoint outside [0, " + std::to_string(n_) + ")");
    }
    if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) {
      throw DomainError("duplicate edge (" + std::to_string(key.first) + ", " +
                        std::to_string(key.second) + ")");
    }
    edges_.emplace_back(key.first, key.second);
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) {
    throw DomainError("vertex " + std::to_string(v) + " outside [0, " + std::to_string(n_) + ")");
  }
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

bool Graph::has_isolated_vertex() const {
  return std::any_of(adjacency_.begin(), adjacency_.end(),
                     [](const auto& adj) { return adj.empty(); });
}

std::uint64_t Graph::neighbor_mask(Vertex v) const {
  if (n_ > 64) throw DomainError("bitmask queries need at most 64 vertices");
  std::uint64_t mask = 0;
  for (Vertex u : neighbors(v)) mask |= std::uint64_t{1} << u;
  return mask;
}

std::uint64_t to_mask(const VertexSet& d, int n_vertices) {
  if (n_vertices > 64) throw DomainError("bitmask queries need at most 64 vertices");
  std::uint64_t mask = 0;
  for (Vertex v : d) {
    if (v < 0 || v >= n_vertices) {
      throw DomainError("vertex " + std::to_string(v) + " outside [0, " +
                        std::to_string(n_vertices) + ")");
    }
    mask |= std::uint64_t{1} << v;
  }
  return mask;
}

VertexSet from_mask(std::uint64_t mask) {
  VertexSet out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

bool is_total_dominating_mask(const Graph& g, std::uint64_t mask) {
  for (Vertex i = 0; i < g.n_vertices(); ++i) {
    if ((g.neighbor_mask(i) & mask) == 0) return false;
  }
  return true;
}

bool is_dominating_mask(const Graph& g, std::uint64_t mask) {
  for (Vertex i = 0; i < g.n_vertices(); ++i) {
    if ((mask >> i) & 1U) continue;
    if ((g.neighbor_mask(i) & mask) == 0) return false;
  }
  return true;
}

bool is_total_dominating_set(const Graph& g, const VertexSet& d) {
  return is_total_dominating_mask(g, to_mask(d, g.n_vertices()));
}

bool is_dominating_set(const Graph& g, const VertexSet& d) {
  return is_dominating_mask(g, to_mask(d, g.n_vertices()));
}

namespace {

// Subsets by increasing cardinality (Gosper's hack within each level); stops
// after the first level that contains an accepted set.
template <class Accept>
MinimumSets smallest_accepted(int n, Accept accept) {
  if (n > kMaxDenseVars) {
    throw ResourceError("exhaustive search limited to " + std::to_string(kMaxDenseVars) +
                        " vertices");
  }
  MinimumSets result;
  if (accept(std::uint64_t{0})) {
    result.sets.push_back({});
    return result;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (int k = 1; k <= n; ++k) {
    for (std::uint64_t s = (std::uint64_t{1} << k) - 1; s < limit;) {
      if (accept(s)) result.sets.push_back(from_mask(s));
      const std::uint64_t c = s & -s;
      const std::uint64_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
    if (!result.sets.empty()) {
      result.size = k;
      return result;
    }
  }
  return result;  // unreachable for feasible inputs
}

}  // namespace

MinimumSets minimum_tds_bruteforce(const Graph& g) {
  if (g.has_isolated_vertex()) throw InfeasibleError("no TDS exists: graph has an isolated vertex");
  std::vector<std::uint64_t> nbr(g.n_vertices());
  for (Vertex v = 0; v < g.n_vertices(); ++v) nbr[v] = g.neighbor_mask(v);
  return smallest_accepted(g.n_vertices(), [&](std::uint64_t s) {
    return std::all_of(nbr.begin(), nbr.end(), [s](std::uint64_t m) { return (m & s) != 0; });
  });
}

MinimumSets minimum_ds_bruteforce(const Graph& g) {
  std::vector<std::uint64_t> closed(g.n_vertices());
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    closed[v] = g.neighbor_mask(v) | (std::uint64_t{1} << v);
  }
  return smallest_accepted(g.n_vertices(), [&](std::uint64_t s) {
    return std::all_of(closed.begin(), closed.end(),
                       [s](std::uint64_t m) { return (m & s) != 0; });
  });
}

DegreePartition degree_partition(const Graph& g) {
  DegreePartition p;
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    switch (g.degree(v)) {
      case 0: p.v0.push_back(v); break;
      case 1: p.v1.push_back(v); break;
      case 2: p.v2.push_back(v); break;
      default: p.v_ge3.push_back(v); break;
    }
  }
  return p;
}

Graph benchmark_graph() {
  return Graph(6, {{0, 1}, {0, 5}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 4}});
}

}  // namespace tdsqaoa
