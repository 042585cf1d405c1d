#include <doctest.h>

#include <cmath>

#include "coarse_menger/covering.hpp"
#include "coarse_menger/generators.hpp"
#include "coarse_menger/models.hpp"
#include "coarse_menger/packing.hpp"
#include "oracles.hpp"

using namespace coarse_menger;

namespace {

RootedPattern k2(const VertexSet& x, const VertexSet& y, double ell = 0) {
  RootedPattern p;
  p.pattern = Graph(2);
  p.pattern.add_edge(0, 1);
  p.roots = {x, y};
  p.ell = ell;
  return p;
}

bool centered_within(const Graph& g, const CenteredSet& c) {
  for (Vertex v : c.z)
    if (!(set_distance(g, VertexSet{v}, c.centers) <= c.radius + 1e-9)) return false;
  return true;
}

}  // namespace

TEST_CASE("the rooted P3 grid has no two disjoint models") {
  std::size_t previous = 0;
  for (int w = 3; w <= 5; ++w) {
    auto spec = rooted_p3_grid(w);
    const auto& p = *spec.rooted;
    CHECK(find_rooted_model(spec.graph, p, spec.graph.vertices()));
    CHECK_FALSE(has_disjoint_rooted_models(spec.graph, p));
    auto ep = rooted_fat_minor_ep(spec.graph, *spec.decomposition, p, 2, 1);
    CHECK_FALSE(ep.packing);
    CHECK(centered_within(spec.graph, ep.hitting));
    CHECK(static_cast<int>(ep.hitting.center_count()) <= ep.bag_size);
    CHECK_FALSE(find_rooted_model(spec.graph, p, set_difference(spec.graph.vertices(), ep.hitting.z)));
    auto minimum = min_model_hitting_set(spec.graph, p);
    CHECK_FALSE(find_rooted_model(spec.graph, p, set_difference(spec.graph.vertices(), minimum)));
    CHECK(minimum.size() >= previous);
    previous = minimum.size();
  }
}

TEST_CASE("found models pass the fat-minor checker") {
  auto spec = rooted_p3_grid(4);
  auto m = find_rooted_model(spec.graph, *spec.rooted, spec.graph.vertices());
  REQUIRE(m);
  CHECK(check_fat_minor(spec.graph, *m));
  Grid g = grid(3, 7);
  auto fat = find_rooted_model(g.graph, k2(g.column(0), g.column(6), 4), g.graph.vertices());
  REQUIRE(fat);
  CHECK(check_fat_minor(g.graph, *fat));
}

TEST_CASE("K2 models reduce to X-Y paths and agree with the duality sweep") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 3 + static_cast<int>(seed % 7);
    Graph g = oracle::random_graph(seed * 53, n, 0.3, true);
    std::mt19937_64 rng(seed);
    VertexSet x = oracle::random_subset(rng, n);
    // A shared root is a one-vertex X-Y path but no K2 model, so keep the roots apart.
    VertexSet y = set_difference(oracle::random_subset(rng, n), x);
    if (y.empty()) continue;
    auto p = k2(x, y);
    CHECK(static_cast<bool>(find_rooted_model(g, p, g.vertices())) == !enumerate_paths(g, 0, x, y).paths.empty());
    auto td = min_degree_decomposition(g);
    for (int k = 1; k <= 3; ++k)
      for (double r : {1.0, 2.0, 3.0}) {
        auto ep = rooted_fat_minor_ep(g, td, p, k, r);
        auto best = max_far_packing(g, x, y, 0, r).size();
        if (ep.packing) {
          REQUIRE(ep.models.size() == static_cast<std::size_t>(k));
          CHECK(best >= static_cast<std::size_t>(k));
          for (const auto& m : ep.models) CHECK(check_fat_minor(g, m));
          for (std::size_t a = 0; a < ep.models.size(); ++a)
            for (std::size_t b = a + 1; b < ep.models.size(); ++b)
              CHECK(at_least(set_distance(g, model_union(ep.models[a]), model_union(ep.models[b])), r));
        } else {
          CHECK(hits_family(g, LxyFamily{0, x, y}, ep.hitting.z));
          CHECK(static_cast<int>(ep.hitting.center_count()) <= (k - 1) * ep.bag_size);
          CHECK(ep.hitting.radius <= std::ceil((r - 1) / 2) + 1e-9);
          CHECK(centered_within(g, ep.hitting));
        }
      }
  }
}

TEST_CASE("a shared root vertex is an X-Y path but not a K2 model") {
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  CHECK_FALSE(find_rooted_model(p3, k2(VertexSet{1}, VertexSet{1}), p3.vertices()));
  CHECK(find_rooted_model(p3, k2(VertexSet{0, 1}, VertexSet{1, 2}), p3.vertices()));
}

TEST_CASE("K2 between leaves of a tree") {
  Graph t(7);  // spider: center 0, legs 1-2, 3-4, 5-6
  for (Vertex leg : {1, 3, 5}) {
    t.add_edge(0, leg);
    t.add_edge(leg, leg + 1);
  }
  auto p = k2(VertexSet{2}, VertexSet{4, 6});
  auto ep = rooted_fat_minor_ep(t, min_degree_decomposition(t), p, 2, 3);
  // Every 2-to-{4, 6} path passes the center, so two models can never be 3 apart.
  CHECK_FALSE(ep.packing);
  CHECK(hits_family(t, LxyFamily{0, VertexSet{2}, VertexSet{4, 6}}, ep.hitting.z));
  CHECK_FALSE(has_disjoint_rooted_models(t, p));
  CHECK(min_model_hitting_set(t, p).size() == 1);
}

TEST_CASE("rooted models reject malformed patterns") {
  Grid g = grid(3, 3);
  RootedPattern bad = k2(g.column(0), g.column(2));
  bad.roots.pop_back();
  CHECK_THROWS_AS(find_rooted_model(g.graph, bad, g.graph.vertices()), InputError);
  RootedPattern loose;
  loose.pattern = Graph(2);
  loose.roots = {g.column(0), g.column(2)};
  CHECK_THROWS_AS(find_rooted_model(g.graph, loose, g.graph.vertices()), InputError);
  Graph w(2);
  w.add_edge(0, 1, 2.0);
  CHECK_THROWS_AS(rooted_fat_minor_ep(w, min_degree_decomposition(w), k2(VertexSet{0}, VertexSet{1}), 1, 1),
                  InputError);
}
