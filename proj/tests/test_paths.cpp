#include <doctest.h>

#include "coarse_menger/generators.hpp"
#include "coarse_menger/paths.hpp"
#include "oracles.hpp"

using namespace coarse_menger;

namespace {

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

std::vector<std::vector<Vertex>> sequences(const PathEnumeration& e) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& p : e.paths) out.push_back(p.sequence);
  return out;
}

}  // namespace

TEST_CASE("path witnesses") {
  Graph p5 = path_graph(5);
  auto p = make_path(p5, {0, 1, 2, 3, 4});
  CHECK(p.endpoint_distance == 4);
  CHECK(p.edge_count() == 4);
  CHECK(make_path(p5, {3}).edge_count() == 0);
  CHECK_THROWS_AS(make_path(p5, {0, 2}), InputError);
  CHECK_THROWS_AS(make_path(p5, {0, 1, 0}), InputError);
  CHECK_THROWS_AS(make_path(p5, {}), InputError);
  CHECK(canonical(make_path(p5, {3, 2, 1})).sequence == std::vector<Vertex>{1, 2, 3});
  Graph w(3);
  w.add_edge(0, 1, 1.5);
  w.add_edge(1, 2, 2.0);
  CHECK(path_length(w, make_path(w, {0, 1, 2})) == 3.5);
}

TEST_CASE("(l, X, Y)-path recognition examples") {
  Graph p5 = path_graph(5);
  CHECK(is_lxy_path(p5, make_path(p5, {2}), 0, VertexSet{2}, VertexSet{2, 4}));
  CHECK_FALSE(is_lxy_path(p5, make_path(p5, {2}), 1, VertexSet{2}, VertexSet{2}));
  auto whole = make_path(p5, {0, 1, 2, 3, 4});
  CHECK(is_lxy_path(p5, whole, 4, VertexSet{0}, VertexSet{4}));
  CHECK_FALSE(is_lxy_path(p5, whole, 5, VertexSet{0}, VertexSet{4}));
  // Either orientation, interior vertices may lie in X or Y.
  CHECK(is_lxy_path(p5, whole, 0, VertexSet{4}, VertexSet{0, 2}));
}

TEST_CASE("A-path recognition examples") {
  Graph tri(3);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  CHECK_FALSE(is_a_path(tri, make_path(tri, {0}), VertexSet{0, 1}));
  CHECK(is_a_path(tri, make_path(tri, {0, 1}), VertexSet{0, 1}));
  Graph star(4);  // center 0, leaves 1, 2, 3
  for (Vertex v = 1; v <= 3; ++v) star.add_edge(0, v);
  CHECK(is_a_path(star, make_path(star, {1, 0, 2}), VertexSet{1, 2}));
  auto all = enumerate_a_paths(star, VertexSet{1, 2});
  REQUIRE(all.paths.size() == 1);
  CHECK(all.paths[0].sequence == std::vector<Vertex>{1, 0, 2});
}

TEST_CASE("enumeration examples") {
  Graph p3 = path_graph(3);
  CHECK(enumerate_paths(p3, 0, VertexSet{}, VertexSet{}).paths.empty());
  CHECK(enumerate_paths(p3, 0, VertexSet{0}, VertexSet{2}).paths.size() == 1);
  Graph c4(4);
  for (Vertex v = 0; v < 4; ++v) c4.add_edge(v, (v + 1) % 4);
  auto two = enumerate_paths(c4, 0, VertexSet{0}, VertexSet{2});
  REQUIRE(two.paths.size() == 2);
  CHECK(two.paths[0].sequence == std::vector<Vertex>{0, 1, 2});
  CHECK(two.paths[1].sequence == std::vector<Vertex>{0, 3, 2});
  CHECK_FALSE(two.truncated);
}

TEST_CASE("enumeration respects the vertex cap and flags truncation") {
  Grid big = grid(3, 6);
  CHECK_THROWS_AS(enumerate_paths(big.graph, 0, big.column(0), big.column(5)), CapacityError);
  auto some = enumerate_paths(big.graph, 0, big.column(0), big.column(5), 10);
  CHECK(some.truncated);
  CHECK(some.paths.size() == 10);
}

TEST_CASE("enumeration matches a naive depth-first oracle") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 8);
    Graph g = oracle::random_graph(seed, n, 0.35, seed % 4 != 0, seed % 3 == 0 ? 3 : 1);
    std::mt19937_64 rng(seed);
    VertexSet x = oracle::random_subset(rng, n), y = oracle::random_subset(rng, n);
    for (double ell : {0.0, 1.0, 2.0, 3.5}) {
      auto got = enumerate_paths(g, ell, x, y);
      CHECK(sequences(got) == oracle::lxy_paths(g, ell, x, y));
      for (const auto& p : got.paths) CHECK(is_lxy_path(g, p, ell, x, y));
    }
    CHECK(sequences(enumerate_a_paths(g, x)) == oracle::a_paths(g, x));
  }
}

TEST_CASE("(0, X, Y)-paths are the X-Y paths and (1, A, A)-paths are the A-paths") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    Graph g = oracle::random_graph(seed * 31, n, 0.3, true);
    std::mt19937_64 rng(seed);
    VertexSet x = oracle::random_subset(rng, n), y = oracle::random_subset(rng, n);
    for (const auto& seq : oracle::all_paths(g)) {
      auto p = make_path(g, seq);
      Vertex a = seq.front(), b = seq.back();
      bool ends = (x.contains(a) && y.contains(b)) || (x.contains(b) && y.contains(a));
      CHECK(is_lxy_path(g, p, 0, x, y) == ends);
      CHECK(is_lxy_path(g, p, 1, x, x) == is_a_path(g, p, x));
    }
  }
}

TEST_CASE("fat minor checks") {
  Graph p5 = path_graph(5);
  auto k2 = lxy_path_to_rooted_k2(p5, make_path(p5, {0, 1, 2, 3, 4}), 4, VertexSet{0}, VertexSet{4});
  CHECK(k2.branch_sets == std::vector<VertexSet>{VertexSet{0}, VertexSet{4}});
  CHECK(k2.edge_paths[0].sequence == std::vector<Vertex>{0, 1, 2, 3, 4});
  CHECK(check_fat_minor(p5, k2));

  Graph p9 = path_graph(9);
  auto long_one = lxy_path_to_rooted_k2(p9, make_path(p9, {8, 7, 6, 5, 4, 3, 2, 1, 0}), 4, VertexSet{0}, VertexSet{8});
  CHECK(check_fat_minor(p9, long_one));
  CHECK(set_distance(p9, long_one.branch_sets[0], long_one.branch_sets[1]) == 8);

  auto overlapping = k2;
  overlapping.branch_sets[1] = VertexSet{0, 1};
  auto verdict = check_fat_minor(p5, overlapping);
  CHECK_FALSE(verdict);
  bool named = false;
  for (const auto& v : verdict.violations) named = named || v.rfind("disjointness", 0) == 0;
  CHECK(named);

  CHECK_THROWS_AS(lxy_path_to_rooted_k2(p5, make_path(p5, {2}), 0, VertexSet{2}, VertexSet{2}), InputError);
  CHECK_THROWS_AS(lxy_path_to_rooted_k2(p5, make_path(p5, {0, 1}), 3, VertexSet{0}, VertexSet{1}), InputError);
}

TEST_CASE("a hand-built rooted P3 model in the 6x6 grid") {
  Grid g = grid(6, 6);
  FatMinorModel m;
  m.pattern = Graph(3);
  m.pattern.add_edge(0, 1);
  m.pattern.add_edge(1, 2);
  m.branch_sets = {VertexSet{g.at(4, 0)}, VertexSet{g.at(0, 1), g.at(0, 2), g.at(0, 3), g.at(0, 4)},
                   VertexSet{g.at(4, 5)}};
  m.edge_paths = {make_path(g.graph, {g.at(4, 0), g.at(3, 0), g.at(2, 0), g.at(1, 0), g.at(0, 0), g.at(0, 1)}),
                  make_path(g.graph, {g.at(0, 4), g.at(0, 5), g.at(1, 5), g.at(2, 5), g.at(3, 5), g.at(4, 5)})};
  m.roots = std::vector<VertexSet>{g.column(0), g.row(0), g.column(5)};
  m.fatness = 3;
  CHECK(check_fat_minor(g.graph, m));
  // The two edge paths come within 3 of each other at the top row.
  m.fatness = 4;
  CHECK_FALSE(check_fat_minor(g.graph, m));
  m.fatness = 3;
  m.roots = std::vector<VertexSet>{g.column(5), g.row(0), g.column(0)};
  CHECK_FALSE(check_fat_minor(g.graph, m));
}

TEST_CASE("every nondegenerate (l, X, Y)-path converts to a valid rooted K2 model") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    Graph g = oracle::random_graph(seed * 5, n, 0.35, true);
    std::mt19937_64 rng(seed);
    VertexSet x = oracle::random_subset(rng, n), y = oracle::random_subset(rng, n);
    for (double ell : {0.0, 1.0, 2.0})
      for (const auto& p : enumerate_paths(g, ell, x, y).paths) {
        if (p.sequence.size() < 2) continue;
        auto m = lxy_path_to_rooted_k2(g, p, ell, x, y);
        CHECK(check_fat_minor(g, m));
        CHECK(model_union(m) == p.vertex_set());
      }
  }
}
