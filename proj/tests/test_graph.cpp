#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "tdsqaoa/errors.hpp"
#include "tdsqaoa/graph.hpp"

using namespace tdsqaoa;

namespace {

Graph path4() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}}); }

bool contains(const std::vector<VertexSet>& sets, const VertexSet& s) {
  return std::find(sets.begin(), sets.end(), s) != sets.end();
}

}  // namespace

TEST_CASE("graph construction rejects malformed edges") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), DomainError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), DomainError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), DomainError);
  CHECK_THROWS_AS(Graph(3, {{-1, 2}}), DomainError);
  CHECK_NOTHROW(Graph(3, {}));
}

TEST_CASE("neighbors") {
  const Graph g = benchmark_graph();
  CHECK(g.neighbors(2) == VertexSet{1, 3, 4});
  CHECK(g.neighbors(0) == VertexSet{1, 5});
  CHECK(Graph(1, {}).neighbors(0).empty());
  CHECK_THROWS_AS(g.neighbors(6), DomainError);
  CHECK_THROWS_AS(g.neighbors(-1), DomainError);
}

TEST_CASE("benchmark instance") {
  const Graph g = benchmark_graph();
  CHECK(g.n_vertices() == 6);
  CHECK(g.n_edges() == 7);
  CHECK(g.degree(4) == 3);
  CHECK(is_total_dominating_set(g, {0, 1, 2}));
}

TEST_CASE("total domination") {
  const Graph g = benchmark_graph();
  CHECK(is_total_dominating_set(g, {0, 4, 5}));
  CHECK_FALSE(is_total_dominating_set(g, {2, 5}));
  const Graph isolated(3, {{0, 1}});
  CHECK_FALSE(is_total_dominating_set(isolated, {0, 1, 2}));
  CHECK_THROWS_AS(is_total_dominating_set(g, {7}), DomainError);
}

TEST_CASE("domination") {
  CHECK(is_dominating_set(benchmark_graph(), {2, 5}));
  CHECK(is_dominating_set(path4(), {1, 3}));
  CHECK_FALSE(is_dominating_set(path4(), {}));
}

TEST_CASE("minimum TDS oracle") {
  const MinimumSets tds = minimum_tds_bruteforce(benchmark_graph());
  CHECK(tds.size == 3);
  std::vector<VertexSet> expected{{0, 1, 2}, {0, 4, 5}, {1, 2, 4}, {2, 4, 5}};
  auto got = tds.sets;
  std::sort(got.begin(), got.end());
  CHECK(got == expected);

  const MinimumSets p = minimum_tds_bruteforce(path4());
  CHECK(p.size == 2);
  CHECK(contains(p.sets, {1, 2}));

  const MinimumSets e = minimum_tds_bruteforce(Graph(2, {{0, 1}}));
  CHECK(e.size == 2);
  CHECK(e.sets == std::vector<VertexSet>{{0, 1}});

  CHECK_THROWS_AS(minimum_tds_bruteforce(Graph(3, {{0, 1}})), InfeasibleError);
}

TEST_CASE("minimum DS oracle") {
  const MinimumSets ds = minimum_ds_bruteforce(benchmark_graph());
  CHECK(ds.size == 2);
  for (const VertexSet& s : std::vector<VertexSet>{{2, 5}, {0, 2}, {1, 4}, {0, 4}}) {
    CHECK(contains(ds.sets, s));
  }
  CHECK(minimum_ds_bruteforce(path4()).size == 2);
  CHECK(contains(minimum_ds_bruteforce(path4()).sets, {1, 3}));
  CHECK(minimum_ds_bruteforce(Graph(3, {{0, 1}, {1, 2}, {0, 2}})).size == 1);
  // isolated vertices must dominate themselves
  CHECK(minimum_ds_bruteforce(Graph(3, {})).size == 3);
}

TEST_CASE("degree partition") {
  const DegreePartition p = degree_partition(benchmark_graph());
  CHECK(p.v2 == VertexSet{0, 1, 3, 5});
  CHECK(p.v_ge3 == VertexSet{2, 4});
  CHECK(p.v0.empty());
  CHECK(p.v1.empty());
  CHECK(degree_partition(Graph(2, {{0, 1}})).v1 == VertexSet{0, 1});
  CHECK(degree_partition(Graph(3, {})).v0 == VertexSet{0, 1, 2});
}

TEST_CASE("domination properties on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 8;
    const Graph g = oracle::random_gnp(n, 0.45, rng);

    const DegreePartition p = degree_partition(g);
    VertexSet all;
    for (const auto* part : {&p.v0, &p.v1, &p.v2, &p.v_ge3}) all.insert(all.end(), part->begin(), part->end());
    std::sort(all.begin(), all.end());
    REQUIRE(static_cast<int>(all.size()) == n);
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    for (Vertex v : p.v_ge3) CHECK(g.degree(v) >= 3);

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const VertexSet d = from_mask(mask);
      const bool tds = is_total_dominating_set(g, d);
      if (tds) CHECK(is_dominating_set(g, d));
      std::vector<int> member(n, 0);
      for (Vertex v : d) member[v] = 1;
      CHECK(tds == oracle::is_tds_naive(g, member));
    }

    if (!g.has_isolated_vertex()) {
      const int t = minimum_tds_bruteforce(g).size;
      CHECK(t >= minimum_ds_bruteforce(g).size);
      CHECK(t >= 2);
    }
  }
}
