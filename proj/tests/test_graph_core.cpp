#include <doctest.h>

#include <cmath>
#include <sstream>

#include "coarse_menger/caps.hpp"
#include "coarse_menger/centered.hpp"
#include "coarse_menger/generators.hpp"
#include "coarse_menger/io.hpp"
#include "oracles.hpp"

using namespace coarse_menger;

namespace {

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

}  // namespace

TEST_CASE("vertex sets stay sorted and deduplicated") {
  VertexSet s{5, 1, 3, 1};
  CHECK(s.members() == std::vector<Vertex>{1, 3, 5});
  s.insert(2);
  s.insert(3);
  CHECK(s.members() == std::vector<Vertex>{1, 2, 3, 5});
  VertexSet t{3, 4};
  CHECK(set_union(s, t).members() == std::vector<Vertex>{1, 2, 3, 4, 5});
  CHECK(set_intersection(s, t) == VertexSet{3});
  CHECK(set_difference(s, t) == VertexSet{1, 2, 5});
  CHECK(is_subset(VertexSet{1, 5}, s));
  CHECK_FALSE(is_subset(t, s));
  CHECK(intersects(s, t));
  CHECK_FALSE(intersects(VertexSet{0}, t));
}

TEST_CASE("graph rejects loops, parallel edges, unknown ids and nonpositive weights") {
  Graph g(3);
  g.add_edge(0, 1);
  CHECK_THROWS_AS(g.add_edge(0, 0), InputError);
  CHECK_THROWS_AS(g.add_edge(1, 0), InputError);
  CHECK_THROWS_AS(g.add_edge(0, 7), InputError);
  CHECK_THROWS_AS(g.add_edge(1, 2, 0.0), InputError);
  CHECK_THROWS_AS(g.add_edge(1, 2, -1.0), InputError);
  CHECK_THROWS_AS(g.distance(0, 5), InputError);
  CHECK_FALSE(g.is_weighted());
  g.add_edge(1, 2, 2.5);
  CHECK(g.is_weighted());
}

TEST_CASE("distance examples") {
  Graph p3 = path_graph(3);
  CHECK(distance(p3, 0, 2) == 2);
  for (Vertex v = 0; v < 3; ++v) CHECK(distance(p3, v, v) == 0);
  Grid g4 = grid(4, 4);
  CHECK(distance(g4.graph, g4.at(0, 0), g4.at(3, 3)) == 6);
  Graph split(2);
  CHECK(std::isinf(distance(split, 0, 1)));
}

TEST_CASE("set distance examples") {
  Graph p5 = path_graph(5);
  CHECK(set_distance(p5, VertexSet{1, 2}, VertexSet{2, 4}) == 0);
  CHECK(set_distance(p5, VertexSet{0}, VertexSet{4}) == 4);
  Grid g3 = grid(3, 3);
  CHECK(set_distance(g3.graph, g3.column(0), g3.column(2)) == 2);
  CHECK_THROWS_AS(set_distance(p5, VertexSet{}, VertexSet{1}), InputError);
  CHECK_THROWS_AS(set_distance(p5, VertexSet{1}, VertexSet{}), InputError);
}

TEST_CASE("neighborhood examples") {
  Graph p5 = path_graph(5);
  CHECK(neighborhood(p5, VertexSet{0, 3}, 0) == VertexSet{0, 3});
  CHECK(neighborhood(p5, VertexSet{2}, 1) == VertexSet{1, 2, 3});
  Grid g5 = grid(5, 5);
  auto ball = neighborhood(g5.graph, VertexSet{g5.at(2, 2)}, 2);
  CHECK(ball.size() == 13);
  for (Vertex v : ball) CHECK(std::abs(v / 5 - 2) + std::abs(v % 5 - 2) <= 2);
  CHECK(open_neighborhood(p5, VertexSet{1, 2}) == VertexSet{0, 3});
}

TEST_CASE("certify_centered examples") {
  Graph p5 = path_graph(5);
  auto empty = certify_centered(p5, VertexSet{}, 0, 0);
  REQUIRE(empty);
  CHECK(empty.certificate->centers.empty());
  auto near = certify_centered(p5, VertexSet{0, 2}, 1, 1);
  REQUIRE(near);
  CHECK(near.certificate->centers == VertexSet{1});
  CHECK(verify_centered(p5, *near.certificate));
  auto far = certify_centered(p5, VertexSet{0, 4}, 1, 1);
  CHECK_FALSE(far);
  CHECK(far.refusal == "exhaustive-center-search-failed");
  CHECK(far.mode == SearchMode::exact);
}

TEST_CASE("certify_centered refuses exact search above the cap") {
  Grid g = grid(5, 5);
  CHECK_THROWS_AS(certify_centered(g.graph, VertexSet{0, 24}, 1, 4), CapacityError);
  auto greedy = certify_centered(g.graph, VertexSet{0, 24}, 2, 0, SearchMode::greedy);
  REQUIRE(greedy);
  CHECK(greedy.mode == SearchMode::greedy);
  CHECK(verify_centered(g.graph, *greedy.certificate));
}

TEST_CASE("distances form a metric and match an all-pairs oracle") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 11);
    const int max_weight = seed % 2 ? 1 : 4;
    Graph g = oracle::random_graph(seed, n, 0.3, seed % 3 != 0, max_weight);
    auto d = oracle::floyd(g);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v) {
        double duv = g.distance(u, v);
        if (d[u][v] >= oracle::kInf) {
          CHECK(std::isinf(duv));
          continue;
        }
        CHECK(duv == doctest::Approx(d[u][v]).epsilon(1e-12));
        if (!g.is_weighted()) CHECK(duv == std::floor(duv));
        CHECK(duv == g.distance(v, u));
        CHECK((duv == 0) == (u == v));
        for (Vertex w = 0; w < n; ++w)
          if (!std::isinf(g.distance(v, w))) CHECK(within(duv, g.distance(u, w) + g.distance(w, v)));
      }
  }
}

TEST_CASE("neighborhoods compose exactly when unweighted and by inclusion when weighted") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const bool weighted = seed % 2 == 0;
    Graph g = oracle::random_graph(seed * 7, 9, 0.25, true, weighted ? 3 : 1);
    std::mt19937_64 rng(seed);
    VertexSet s = oracle::random_subset(rng, 9, 0.2);
    for (double r : {0.0, 1.0, 2.0})
      for (double t : {0.0, 1.0, 3.0}) {
        auto two_step = neighborhood(g, neighborhood(g, s, t), r);
        auto one_step = neighborhood(g, s, r + t);
        if (weighted) CHECK(is_subset(two_step, one_step));
        else CHECK(two_step == one_step);
        CHECK(is_subset(s, one_step));
      }
  }
}

TEST_CASE("certify_centered agrees with brute force and is monotone") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Graph g = oracle::random_graph(seed * 13, 8, 0.3, true);
    auto d = oracle::floyd(g);
    std::mt19937_64 rng(seed);
    VertexSet z = oracle::random_subset(rng, 8, 0.4);
    for (int k = 0; k <= 3; ++k)
      for (double r : {0.0, 1.0, 2.0}) {
        auto res = certify_centered(g, z, k, r);
        CHECK(static_cast<bool>(res) == oracle::centered(d, z, k, r));
        if (!res) continue;
        CHECK(res.certificate->center_count() <= static_cast<std::size_t>(k));
        CHECK(verify_centered(g, *res.certificate));
        CHECK(certify_centered(g, z, k + 1, r));
        CHECK(certify_centered(g, z, k, r + 1));
      }
  }
}

TEST_CASE("edge lists round-trip, including isolated vertices and weights") {
  const std::string text = "# sample\n0 1\n1 2 2.5\n7\n";
  Graph g = parse_edge_list_text(text);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 2);
  REQUIRE(g.find_label(7));
  CHECK(g.degree(*g.find_label(7)) == 0);
  Graph back = parse_edge_list_text(format_edge_list(g));
  CHECK(back == g);
  Graph from_json = graph_from_json(graph_to_json(g));
  CHECK(from_json == g);
  CHECK(from_json.edge_weight(*g.find_label(1), *g.find_label(2)) == 2.5);
}

TEST_CASE("malformed graph input carries the line or field") {
  try {
    parse_edge_list_text("0 1\n2 x\n");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_edge_list_text("0 1 2 3\n"), InputError);
  CHECK_THROWS_AS(parse_edge_list_text("0 1 -2\n"), InputError);
  CHECK_THROWS_AS(parse_edge_list_text("0 0\n"), InputError);
  try {
    graph_from_json(nlohmann::json{{"vertices", {0, 1}}, {"edges", {{0, 5}}}});
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("edges[0]") != std::string::npos);
  }
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::array()), InputError);
  CHECK_THROWS_AS(vertices_from_labels(path_graph(2), {9}), InputError);
}

TEST_CASE("caps parse as a single value or as keyed entries, clamped to hard limits") {
  Caps all = parse_caps("18");
  CHECK(all.path_enumeration_vertices == 18);
  CHECK(all.centered_exact_vertices == 18);
  CHECK(all.separation_vertices == HardLimits::separation_vertices);
  Caps some = parse_caps("paths=99,centered=30,order=9");
  CHECK(some.path_enumeration_vertices == HardLimits::path_enumeration_vertices);
  CHECK(some.centered_exact_vertices == 30);
  CHECK(some.separation_order == HardLimits::separation_order);
  CHECK(some.gallai_vertices == Caps{}.gallai_vertices);
  CHECK_THROWS_AS(parse_caps("bogus=3"), InputError);
  CHECK_THROWS_AS(parse_caps("paths=abc"), InputError);
  CHECK_THROWS_AS(parse_caps("-4"), InputError);
}
