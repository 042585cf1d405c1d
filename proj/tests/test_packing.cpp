#include <doctest.h>

#include "coarse_menger/generators.hpp"
#include "coarse_menger/packing.hpp"
#include "oracles.hpp"

using namespace coarse_menger;

namespace {

Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

void check_valid(const Graph& g, const PackingSolution& s, double ell, const VertexSet& x, const VertexSet& y,
                 double r) {
  for (const auto& p : s.paths) CHECK(is_lxy_path(g, p, ell, x, y));
  for (std::size_t i = 0; i < s.paths.size(); ++i)
    for (std::size_t j = i + 1; j < s.paths.size(); ++j)
      CHECK(at_least(set_distance(g, s.paths[i].vertex_set(), s.paths[j].vertex_set()), r));
  CHECK(verify_packing(g, s.paths, ell, x, y, r));
}

}  // namespace

TEST_CASE("far packing examples") {
  for (auto [r, n] : {std::pair{3, 9}, std::pair{4, 6}, std::pair{5, 15}}) {
    Grid g = grid(r, n);
    auto s = max_far_packing(g.graph, g.column(0), g.column(n - 1), 0, r);
    CHECK(s.size() == 1);
    CHECK(s.optimal);
  }
  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  auto none = max_far_packing(split, VertexSet{0}, VertexSet{3}, 0, 1);
  CHECK(none.size() == 0);
  CHECK(none.optimal);
  Graph k4 = complete(4);
  auto one = max_far_packing(k4, VertexSet{0}, VertexSet{2}, 0, 1);
  CHECK(one.size() == 1);
  CHECK(one.optimal);
}

TEST_CASE("greedy packing is maximal and flagged non-optimal") {
  Grid g = grid(3, 5);
  auto s = max_far_packing(g.graph, g.column(0), g.column(4), 0, 1, SearchMode::greedy);
  CHECK_FALSE(s.optimal);
  CHECK(s.stats.method == "greedy");
  check_valid(g.graph, s, 0, g.column(0), g.column(4), 1);
  CHECK(s.size() == 3);
}

TEST_CASE("menger packing examples") {
  Graph k4 = complete(4);
  CHECK(menger_packing(k4, VertexSet{2}, VertexSet{2}) == 1);
  CHECK(menger_packing(k4, VertexSet{0, 1}, VertexSet{2, 3}) == 2);
  Grid g = grid(3, 5);
  CHECK(menger_packing(g.graph, g.column(0), g.column(4)) == 3);
  auto paths = menger_paths(g.graph, g.column(0), g.column(4));
  CHECK(paths.size() == 3);
  CHECK(verify_packing(g.graph, paths, 0, g.column(0), g.column(4), 1));
}

TEST_CASE("gallai packing examples") {
  Graph lone(3);
  lone.add_edge(0, 1);
  CHECK(gallai_packing(lone, VertexSet{2}).size() == 0);
  CHECK(gallai_packing(path_graph(3), VertexSet{0, 2}).size() == 1);
  Graph twice(6);
  twice.add_edge(0, 1);
  twice.add_edge(1, 2);
  twice.add_edge(3, 4);
  twice.add_edge(4, 5);
  auto two = gallai_packing(twice, VertexSet{0, 2, 3, 5});
  CHECK(two.size() == 2);
  CHECK(two.mode == "exhaustive");
  Grid big = grid(3, 5);
  CHECK_THROWS_AS(gallai_packing(big.graph, big.column(0)), CapacityError);
}

TEST_CASE("exact packing matches a naive subset oracle") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    Graph g = oracle::random_graph(seed * 3, n, 0.3, seed % 5 != 0, seed % 4 == 0 ? 3 : 1);
    auto d = oracle::floyd(g);
    std::mt19937_64 rng(seed);
    VertexSet x = oracle::random_subset(rng, n), y = oracle::random_subset(rng, n);
    for (double ell : {0.0, 2.0})
      for (double r : {1.0, 2.0, 3.0}) {
        auto s = max_far_packing(g, x, y, ell, r);
        REQUIRE(s.optimal);
        check_valid(g, s, ell, x, y, r);
        auto naive = oracle::far_packing(d, oracle::lxy_paths(g, ell, x, y), r, 4);
        CHECK(std::min<std::size_t>(s.size(), 4) == naive);
      }
  }
}

TEST_CASE("packing is monotone in r, l and the terminal sets") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 4 + static_cast<int>(seed % 6);
    Graph g = oracle::random_graph(seed * 11, n, 0.3, true);
    std::mt19937_64 rng(seed);
    VertexSet x = oracle::random_subset(rng, n), y = oracle::random_subset(rng, n);
    VertexSet bigger_x = set_union(x, oracle::random_subset(rng, n));
    std::size_t last_r = SIZE_MAX;
    for (double r : {1.0, 2.0, 3.0, 4.0}) {
      auto size = max_far_packing(g, x, y, 0, r).size();
      CHECK(size <= last_r);
      last_r = size;
      CHECK(max_far_packing(g, bigger_x, y, 0, r).size() >= size);
    }
    std::size_t last_ell = SIZE_MAX;
    for (double ell : {0.0, 1.0, 2.0, 3.0}) {
      auto size = max_far_packing(g, x, y, ell, 2).size();
      CHECK(size <= last_ell);
      last_ell = size;
    }
  }
}

TEST_CASE("max flow equals the far packing at l = 0, r = 1 on unweighted graphs") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const int n = 2 + static_cast<int>(seed % 11);
    Graph g = oracle::random_graph(seed * 17, n, 0.25, seed % 3 != 0);
    std::mt19937_64 rng(seed);
    VertexSet x = oracle::random_subset(rng, n), y = oracle::random_subset(rng, n);
    auto s = max_far_packing(g, x, y, 0, 1);
    CHECK(s.optimal);
    CHECK(static_cast<int>(s.size()) == menger_packing(g, x, y));
    auto flow = menger_paths(g, x, y);
    CHECK(flow.size() == s.size());
    CHECK(verify_packing(g, flow, 0, x, y, 1));
  }
}

TEST_CASE("gallai packing matches an exhaustive disjoint-path oracle") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    Graph g = oracle::random_graph(seed * 23, n, 0.3, false);
    std::mt19937_64 rng(seed);
    VertexSet a = oracle::random_subset(rng, n, 0.5);
    auto got = gallai_packing(g, a);
    CHECK(got.size() == oracle::disjoint_packing(oracle::a_paths(g, a)));
    for (const auto& p : got.paths) CHECK(is_a_path(g, p, a));
  }
}

TEST_CASE("packing rejects bad thresholds and honours the enumeration cap") {
  Graph p = path_graph(4);
  CHECK_THROWS_AS(max_far_packing(p, VertexSet{0}, VertexSet{3}, 0, 0), InputError);
  CHECK_THROWS_AS(max_far_packing(p, VertexSet{0}, VertexSet{3}, -1, 1), InputError);
  CHECK_THROWS_AS(max_far_packing(p, VertexSet{0}, VertexSet{9}, 0, 1), InputError);
}
