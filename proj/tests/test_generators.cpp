#include <doctest.h>

#include "coarse_menger/generators.hpp"
#include "coarse_menger/serialize.hpp"

using namespace coarse_menger;

namespace {

const Annotation& note(const InstanceSpec& s, const std::string& property) {
  for (const auto& a : s.annotations)
    if (a.property == property) return a;
  FAIL("missing annotation " << property);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("grid shapes") {
  Grid one = grid(1, 1);
  CHECK(one.graph.vertex_count() == 1);
  CHECK(one.graph.edge_count() == 0);

  Grid square = grid(2, 2);
  CHECK(square.graph.edge_count() == 4);
  for (Vertex v = 0; v < 4; ++v) CHECK(square.graph.degree(v) == 2);

  Grid g = grid(3, 4);
  CHECK(g.graph.vertex_count() == 12);
  CHECK(g.graph.edge_count() == 3 * 3 + 4 * 2);
  CHECK(g.at(1, 2) == 6);
  CHECK(g.row(1) == VertexSet{4, 5, 6, 7});
  CHECK(g.column(3) == VertexSet{3, 7, 11});
  CHECK(check_decomposition(g.graph, grid_path_decomposition(g)));
  CHECK_THROWS_AS(grid(0, 3), InputError);
}

TEST_CASE("the r x n lower-bound instance re-verifies its annotations") {
  auto s = menger_lower_bound_instance(3, 9);
  CHECK(s.x == grid(3, 9).column(0));
  CHECK(s.y == grid(3, 9).column(8));
  verify_annotations(s);
  for (const auto& a : s.annotations) {
    REQUIRE(a.verified);
    CHECK(*a.verified);
  }
  CHECK(note(s, "packing at threshold r").observed == 1);
  CHECK(note(s, "packing at threshold r").origin == "claimed");

  auto wide = menger_lower_bound_instance(5, 25);
  CHECK(note(wide, "cover by radius-1 balls").expected.at("at_least") == 2);
  verify_annotations(wide);
  for (const auto& a : wide.annotations)
    if (a.verified) CHECK(*a.verified);

  auto tiny = menger_lower_bound_instance(2, 2);
  verify_annotations(tiny);
  for (const auto& a : tiny.annotations) {
    REQUIRE(a.verified);
    CHECK(*a.verified);
  }
  CHECK_THROWS_AS(menger_lower_bound_instance(3, 2), InputError);
}

TEST_CASE("the rooted P3 grid") {
  auto three = rooted_p3_grid(3);
  REQUIRE(three.rooted);
  CHECK(three.rooted->roots[0] == grid(3, 3).column(0));
  CHECK(three.rooted->roots[1] == grid(3, 3).row(0));
  CHECK(three.rooted->roots[2] == grid(3, 3).column(2));
  verify_annotations(three);
  CHECK(*note(three, "two disjoint rooted models").verified);

  auto five = rooted_p3_grid(5);
  verify_annotations(five);
  CHECK(*note(five, "two disjoint rooted models").verified);
  CHECK(note(five, "minimum hitting set size").observed.get<int>() >= 3);
  CHECK(note(five, "minimum hitting set size").origin == "measured");
  CHECK_THROWS_AS(rooted_p3_grid(2), InputError);
}

TEST_CASE("random streams are deterministic") {
  CHECK(random_instances(5, 0).empty());
  RandomOptions o;
  o.max_weight = 3;
  auto first = random_instances(9, 6, o);
  auto second = random_instances(9, 6, o);
  REQUIRE(first.size() == 6);
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].graph == second[i].graph);
    CHECK(first[i].x == second[i].x);
    CHECK(as_json(first[i]) == as_json(second[i]));
    CHECK_FALSE(first[i].x.empty());
    CHECK_FALSE(first[i].y.empty());
    CHECK_FALSE(first[i].a.empty());
    CHECK(first[i].graph.vertex_count() >= o.min_vertices);
    CHECK(first[i].graph.vertex_count() <= o.max_vertices);
  }
  CHECK(as_json(random_instances(10, 1, o)[0]) != as_json(first[0]));
}

TEST_CASE("partial k-trees ship valid decompositions") {
  for (int width : {1, 2, 3}) {
    RandomOptions o;
    o.family = RandomFamily::partial_k_tree;
    o.tree_width = width;
    o.min_vertices = 4;
    o.max_vertices = 12;
    for (auto& s : random_instances(31 + width, 20, o)) {
      REQUIRE(s.decomposition);
      CHECK(check_decomposition(s.graph, *s.decomposition));
      CHECK(s.decomposition->width() <= width);
      CHECK(is_connected(s.graph, s.graph.vertices()));
      verify_annotations(s);
      CHECK(*note(s, "shipped decomposition is valid").verified);
    }
  }
}
