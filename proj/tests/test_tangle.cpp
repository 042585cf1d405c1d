#include <doctest.h>

#include "coarse_menger/generators.hpp"
#include "coarse_menger/tangle.hpp"
#include "oracles.hpp"

using namespace coarse_menger;

namespace {

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

// Two paths 0-1-2 and 3-4-5 with nothing between them.
Graph two_paths() {
  Graph g(6);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  return g;
}

std::set<std::pair<oracle::Sequence, oracle::Sequence>> as_pairs(const std::vector<Separation>& seps) {
  std::set<std::pair<oracle::Sequence, oracle::Sequence>> out;
  for (const auto& s : seps) {
    std::pair<oracle::Sequence, oracle::Sequence> p{oracle::members(s.a), oracle::members(s.b)};
    out.insert(std::min(p, std::pair{p.second, p.first}));
  }
  return out;
}

Tangle oriented_toward_larger_side(const Graph& g, int theta) {
  Tangle t;
  t.order = theta;
  t.host = g.vertices();
  for (const auto& s : enumerate_separations(g, theta))
    t.members.push_back(s.a.size() <= s.b.size() ? s : Separation{s.b, s.a});
  std::sort(t.members.begin(), t.members.end());
  return t;
}

std::string check_outcome(const Graph& g, const VertexSet& l, const std::vector<VertexSet>& family, int theta,
                          double r_prime, const CenteredSet& z, int xi, double eta, const TrichotomyResult& res) {
  switch (res.outcome) {
    case 1: {
      if (!certify_centered(g, res.z_star.z, xi + 3 * theta - 3, eta + r_prime)) return "outcome 1 over budget";
      if (!is_subset(neighborhood(g, z.z, r_prime), res.z_star.z)) return "outcome 1 misses N[Z]";
      for (const auto& m : family)
        if (!intersects(m, res.z_star.z)) return "outcome 1 misses a member";
      return {};
    }
    case 2:
      if (res.separation.order() >= theta) return "outcome 2 order too large";
      if (!is_separation(g, l, res.separation)) return "outcome 2 is not a separation";
      return {};
    case 3:
      if (!res.tangle) return "outcome 3 without a tangle";
      if (res.tangle->order != theta) return "outcome 3 of the wrong order";
      if (!verify_tangle(g, *res.tangle)) return "outcome 3 tangle fails an axiom";
      return {};
    default:
      return "no outcome";
  }
}

}  // namespace

TEST_CASE("separation enumeration examples") {
  Graph pair(2);
  auto split = as_pairs(enumerate_separations(pair, 1));
  CHECK(split == oracle::separations(pair, pair.vertices(), 1));
  CHECK(split.count({{0}, {1}}) == 1);
  CHECK(split.count({{}, {0, 1}}) == 1);

  Graph triangle = cycle(3);
  auto trivial = enumerate_separations(triangle, 1);
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].a.empty());
  CHECK(trivial[0].b == triangle.vertices());

  CHECK(enumerate_separations(triangle, 0).empty());
  Grid big = grid(3, 4);
  CHECK_THROWS_AS(enumerate_separations(big.graph, 2), CapacityError);
  CHECK_THROWS_AS(enumerate_separations(triangle, 9), CapacityError);
}

TEST_CASE("separation enumeration matches the assignment oracle") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int n = 1 + static_cast<int>(seed % 7);
    Graph g = oracle::random_graph(seed * 59, n, 0.35, seed % 3 != 0);
    for (int theta = 0; theta <= 3; ++theta) {
      auto got = enumerate_separations(g, theta);
      CHECK(std::is_sorted(got.begin(), got.end()));
      CHECK(as_pairs(got) == oracle::separations(g, g.vertices(), theta));
      for (const auto& s : got) CHECK(s.a <= s.b);
    }
    std::mt19937_64 rng(seed);
    VertexSet host = oracle::random_subset(rng, n, 0.6);
    CHECK(as_pairs(enumerate_separations(g, host, 2)) == oracle::separations(g, host, 2));
  }
}

TEST_CASE("tangle axiom examples") {
  Graph k3 = cycle(3);
  Tangle none;
  none.order = 1;
  none.host = k3.vertices();
  auto bare = verify_tangle(k3, none);
  CHECK_FALSE(bare);
  CHECK(bare.axiom == "T1");

  Tangle trivial = none;
  trivial.members = {Separation{VertexSet{}, k3.vertices()}};
  CHECK(verify_tangle(k3, trivial));

  Tangle both = trivial;
  both.members.push_back(Separation{k3.vertices(), VertexSet{}});
  std::sort(both.members.begin(), both.members.end());
  CHECK_FALSE(verify_tangle(k3, both));

  Graph c5 = cycle(5);
  auto big_side = oriented_toward_larger_side(c5, 2);
  CHECK(verify_tangle(c5, big_side));
  auto flipped = big_side;
  for (auto& s : flipped.members) s = Separation{s.b, s.a};
  std::sort(flipped.members.begin(), flipped.members.end());
  CHECK_FALSE(verify_tangle(c5, flipped));
}

TEST_CASE("building the tangle from a family") {
  Graph p7 = path_graph(7);
  auto empty = build_gfrtz_tangle(p7, p7.vertices(), {}, 0, 1, VertexSet{});
  CHECK_FALSE(empty);
  CHECK(empty.refusal == "T1");

  auto toward_end = build_gfrtz_tangle(p7, p7.vertices(), {VertexSet{6}}, 0, 1, VertexSet{});
  REQUIRE(toward_end);
  CHECK(verify_tangle(p7, *toward_end.tangle));
  REQUIRE(toward_end.tangle->parameters);
  CHECK(toward_end.tangle->parameters->family == std::vector<VertexSet>{VertexSet{6}});
  REQUIRE(toward_end.tangle->members.size() == 1);
  CHECK(toward_end.tangle->members[0].a.empty());

  // At order 2 the cut at vertex 6 swallows the member, so neither orientation qualifies.
  auto swallowed = build_gfrtz_tangle(p7, p7.vertices(), {VertexSet{6}}, 0, 2, VertexSet{});
  CHECK_FALSE(swallowed);
  CHECK(swallowed.refusal == "T1");
  // A 2-connected host where every single cut misses one of two members.
  Grid g = grid(3, 3);
  auto rows = build_gfrtz_tangle(g.graph, g.graph.vertices(), {g.row(0), g.row(2)}, 0, 2, VertexSet{});
  REQUIRE(rows);
  CHECK(verify_tangle(g.graph, *rows.tangle));
  for (const auto& s : rows.tangle->members) CHECK(s.a.size() <= 1);

  // Far members on both sides of a single-vertex cut.
  auto split = build_gfrtz_tangle(p7, p7.vertices(), {VertexSet{0}, VertexSet{6}}, 1, 2, VertexSet{});
  CHECK_FALSE(split);
}

TEST_CASE("every built tangle satisfies the axioms") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);
    Graph g = oracle::random_graph(seed * 61, n, 0.35, true);
    std::mt19937_64 rng(seed);
    std::vector<VertexSet> family{VertexSet{static_cast<Vertex>(rng() % n)}, VertexSet{static_cast<Vertex>(rng() % n)}};
    for (int theta = 1; theta <= 2; ++theta) {
      auto built = build_gfrtz_tangle(g, g.vertices(), family, 1, theta, VertexSet{});
      if (built) CHECK(verify_tangle(g, *built.tangle));
      else CHECK_FALSE(built.refusal.empty());
    }
  }
}

TEST_CASE("trichotomy examples") {
  Graph p5 = path_graph(5);
  CenteredSet z{VertexSet{}, VertexSet{}, 0};
  auto nothing = easy_tangle_trichotomy(p5, p5.vertices(), {}, 2, 1, 1, 1, z, 0, 0);
  CHECK(nothing.outcome == 1);
  CHECK(nothing.z_star.z == VertexSet{});

  Grid g = grid(3, 9);
  std::vector<VertexSet> rows{g.row(0), g.row(1), g.row(2)};
  for (int xi : {0, 1}) {
    auto res = easy_tangle_trichotomy(g.graph, g.graph.vertices(), rows, 2, 1, 3, 2, z, xi, 0);
    CHECK(check_outcome(g.graph, g.graph.vertices(), rows, 1, 2, z, xi, 0, res).empty());
    if (xi == 0) CHECK(res.outcome == 3);
  }

  Graph apart = two_paths();
  auto cut = easy_tangle_trichotomy(apart, apart.vertices(), {VertexSet{0}, VertexSet{5}}, 3, 1, 1, 1, z, 0, 0);
  CHECK(cut.outcome == 2);
  CHECK(cut.separation.order() == 0);
  CHECK(check_outcome(apart, apart.vertices(), {VertexSet{0}, VertexSet{5}}, 1, 1, z, 0, 0, cut).empty());
}

TEST_CASE("some outcome of the trichotomy always validates") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    Graph g = oracle::random_graph(seed * 67, n, 0.3, seed % 4 != 0);
    std::mt19937_64 rng(seed);
    std::vector<VertexSet> family;
    for (int i = 0; i < 3; ++i) family.push_back(VertexSet{static_cast<Vertex>(rng() % n)});
    const int k = 2 + static_cast<int>(seed % 2);
    const double r = 1 + static_cast<double>(seed % 3);
    const double r_prime = std::ceil(r / 2);
    // Shrink until no k members are r-far, as the lemma requires.
    while (far_member_packing(g, family, r, k).size() >= static_cast<std::size_t>(k)) family.pop_back();
    CenteredSet z{VertexSet{}, VertexSet{}, 0};
    for (int theta = 1; theta <= 2; ++theta) {
      auto res = easy_tangle_trichotomy(g, g.vertices(), family, k, theta, r, r_prime, z, 1, 0);
      CHECK(check_outcome(g, g.vertices(), family, theta, r_prime, z, 1, 0, res).empty());
    }
  }
}

TEST_CASE("multifold decomposition examples") {
  Graph p6 = path_graph(6);
  CenteredSet z{VertexSet{}, VertexSet{}, 0};
  // With k = 1 the packing hypothesis leaves no members at all.
  CHECK_THROWS_AS(tangle_decompose(p6, p6.vertices(), {VertexSet{5}}, 1, {1}, 1, 1, z), PreconditionError);
  auto base = tangle_decompose(p6, p6.vertices(), {}, 1, {1}, 1, 1, z);
  CHECK(base.z_star == VertexSet{});
  CHECK(base.parts.empty());

  auto one = tangle_decompose(p6, p6.vertices(), {VertexSet{5}}, 2, {1, 1}, 1, 1, z);
  CHECK(one.parts.size() <= 1);
  CHECK(check_multifold(p6, p6.vertices(), {VertexSet{5}}, 2, {1, 1}, 1, 1, z, one).empty());

  Graph apart = two_paths();
  std::vector<VertexSet> ends{VertexSet{0}, VertexSet{5}};
  auto split = tangle_decompose(apart, apart.vertices(), ends, 3, {1, 1, 1}, 1, 1, z);
  CHECK(split.splits >= 1);
  CHECK(split.parts.size() <= 2);
  CHECK(check_multifold(apart, apart.vertices(), ends, 3, {1, 1, 1}, 1, 1, z, split).empty());

  CHECK(multifold_budget({1, 2, 2}, 3) == 0 + 2 * (3 + 3));
  CHECK_THROWS_AS(tangle_decompose(p6, p6.vertices(), {}, 2, {2, 1}, 1, 1, z), InputError);
}

TEST_CASE("multifold conclusions re-check on random hosts") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    Graph g = oracle::random_graph(seed * 71, n, 0.3, seed % 3 != 0);
    std::mt19937_64 rng(seed);
    std::vector<VertexSet> family;
    for (int i = 0; i < 3; ++i) family.push_back(VertexSet{static_cast<Vertex>(rng() % n)});
    const int k = 2;
    while (far_member_packing(g, family, 2, k).size() >= static_cast<std::size_t>(k)) family.pop_back();
    CenteredSet z{VertexSet{}, VertexSet{}, 0};
    std::vector<int> thetas{1, 1 + static_cast<int>(seed % 2)};
    auto res = tangle_decompose(g, g.vertices(), family, k, thetas, 2, 1, z);
    CHECK(check_multifold(g, g.vertices(), family, k, thetas, 2, 1, z, res).empty());
    CHECK(res.parts.size() <= static_cast<std::size_t>(k - 1));
    for (const auto& part : res.parts) CHECK(verify_tangle(g, part.tangle));
  }
}
