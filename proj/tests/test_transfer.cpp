#include <doctest.h>

#include <cmath>

#include "coarse_menger/covering.hpp"
#include "coarse_menger/generators.hpp"
#include "coarse_menger/packing.hpp"
#include "coarse_menger/transfer.hpp"
#include "oracles.hpp"

using namespace coarse_menger;

namespace {

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

QuasiIsometry identity(const Graph& g) {
  QuasiIsometry q;
  for (Vertex v = 0; v < g.vertex_count(); ++v) q.map.push_back(v);
  return q;
}

VertexSet image(const QuasiIsometry& q, const VertexSet& s) {
  std::vector<Vertex> out;
  for (Vertex v : s) out.push_back(q.map[v]);
  return VertexSet(out);
}

// Pulls back a minimum exact hitting set of the target and scans every source path.
void check_pullback(const Graph& source, const Graph& target, const QuasiIsometry& q, double r, double ell,
                    const VertexSet& a, const VertexSet& b) {
  LxyFamily target_family{q.m * ell + 3 * q.a, image(q, a), image(q, b)};
  auto hit = min_ball_hitting(target, target_family, 0);
  auto res = pullback_hitting_set(source, target, q, hit.certificate.z, r, ell, a, b);
  CHECK(res.z == set_union(res.z3, res.z4));
  CHECK(hits_family(source, LxyFamily{ell, a, b}, res.z));
  for (const auto& p : enumerate_paths(source, ell, a, b).paths) CHECK(intersects(p.vertex_set(), res.z));
}

}  // namespace

TEST_CASE("quasi-isometry examples") {
  Grid g = grid(3, 3);
  auto same = verify_quasi_isometry(g.graph, g.graph, identity(g.graph));
  CHECK(same);
  CHECK(same.tightest_a == 0);
  CHECK(same.worst_ratio == 1);

  Graph p4 = path_graph(4);
  auto sub = one_subdivision(p4);
  CHECK(sub.inclusion.m == 2);
  CHECK(sub.inclusion.a == 1);
  CHECK(verify_quasi_isometry(p4, sub.graph, sub.inclusion));
  auto tight = sub.inclusion;
  tight.a = 0;
  auto coverage = verify_quasi_isometry(p4, sub.graph, tight);
  CHECK_FALSE(coverage);
  CHECK_FALSE(coverage.coverage_ok);

  Graph p5 = path_graph(5);
  Graph point(1);
  QuasiIsometry collapse{std::vector<Vertex>(5, 0), 1, 1};
  auto crushed = verify_quasi_isometry(p5, point, collapse);
  CHECK_FALSE(crushed);
  CHECK_FALSE(crushed.lower_ok);

  QuasiIsometry partial{{0, 1}, 1, 0};
  CHECK_THROWS_AS(verify_quasi_isometry(p5, p5, partial), InputError);
}

TEST_CASE("transfer constants") {
  auto unit = transfer_constants(1, 0);
  CHECK(unit.c1 == 4);
  CHECK(unit.c2 == 4);
  auto two = transfer_constants(2, 1);
  CHECK(two.c1 == 39);
  CHECK(two.c2 == 24);
  auto three = transfer_constants(3, 2);
  CHECK(three.c1 == 2 * 9 * 7 + 6 + 6);
  CHECK(three.c2 == (3 + 16 + 1) * 3 + 2);
  CHECK_THROWS_AS(transfer_constants(0.5, 0), InputError);
}

TEST_CASE("remote chain intermediates at three quasi-isometry constants") {
  auto w = constant_witness(5, 7);
  struct Row {
    double m, a;
    RemoteChain expect;
  };
  // Hand-evaluated at k = 2, r = 3, ell = 1 with f = 5, g = 7.
  const Row rows[] = {
      {1, 0, {7, 1, 5, 7, 14, 16, 1, 7, 6, 16}},
      {2, 1, {45, 5, 5, 7, 34, 44, 12, 29, 6, 44}},
      {3, 2, {147, 9, 5, 7, 60, 84, 33, 71, 6, 84}},
  };
  for (const auto& row : rows) {
    auto ch = remote_chain(row.m, row.a, w, 2, 3, 1);
    CHECK(ch.r_prime == row.expect.r_prime);
    CHECK(ch.ell_prime == row.expect.ell_prime);
    CHECK(ch.xi1 == row.expect.xi1);
    CHECK(ch.eta1 == row.expect.eta1);
    CHECK(ch.eta2 == row.expect.eta2);
    CHECK(ch.eta3 == row.expect.eta3);
    CHECK(ch.ell_double_prime == row.expect.ell_double_prime);
    CHECK(ch.eta4 == row.expect.eta4);
    CHECK(ch.f_out == row.expect.f_out);
    CHECK(ch.g_out == row.expect.g_out);
  }
}

TEST_CASE("transferred witnesses") {
  for (double big_f : {1.0, 4.0})
    for (double big_g : {0.0, 3.0, 10.0}) {
      auto w = constant_witness(big_f, big_g);
      auto remote = transfer_witness(1, 0, w, TransferVariant::remote);
      for (int k = 1; k <= 4; ++k)
        for (double r : {1.0, 2.0, 7.0}) {
          CHECK(remote.f(k, r, 0) == big_f + k - 1);
          CHECK(remote.g(k, r, 0) == std::max(2 * big_g + 2, 2 + r));
          CHECK(remote_chain(1, 0, w, k, r, 0).r_prime == r + 4);
        }
    }
  auto w = constant_witness(3, 2);
  auto menger = transfer_witness(2, 1, w, TransferVariant::menger);
  auto remote = transfer_witness(2, 1, w, TransferVariant::remote);
  CHECK(menger.f(2, 3, 5) == remote.f(2, 3, 0));
  CHECK(menger.g(2, 3, 5) == remote.g(2, 3, 0));
  auto gallai = transfer_witness(2, 1, w, TransferVariant::gallai);
  CHECK(gallai.f(2, 3, 0) == 3);
  CHECK(gallai.g(2, 3, 0) == 2 * 2 * 2 + 24);
  CHECK_FALSE(gallai.provenance.empty());
}

TEST_CASE("scaled witnesses") {
  WitnessFunctions linear{[](int, double, double) { return 2.0; }, [](int, double r, double) { return 3 * r; }, "3r"};
  for (auto v : {TransferVariant::remote, TransferVariant::menger, TransferVariant::gallai}) {
    auto s = scale_witness(linear, v);
    for (double r : {0.5, 1.0, 4.0}) {
      CHECK(s.g(2, r, 1) == doctest::Approx(3 * r));
      CHECK(s.f(2, r, 1) == 2);
    }
    auto c = scale_witness(constant_witness(1, 5), v);
    CHECK(c.g(3, 4, 2) == 20);
  }
  WitnessFunctions by_ell{[](int, double, double ell) { return ell; }, [](int, double, double ell) { return ell; }, "l"};
  auto remote = scale_witness(by_ell, TransferVariant::remote);
  CHECK(remote.f(1, 4, 8) == 2);
  CHECK(remote.g(1, 4, 8) == 8);
}

TEST_CASE("metric scaling") {
  Graph p3 = path_graph(3);
  CHECK(scale_metric(p3, 1) == p3);
  CHECK(distance(scale_metric(p3, 2), 0, 2) == 4);
  CHECK_THROWS_AS(scale_metric(p3, 0), InputError);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Graph g = oracle::random_graph(seed * 73, 2 + static_cast<int>(seed % 8), 0.35, seed % 3 != 0, 5);
    for (double lambda : {1.0 / 3, 2.0, 0.75}) {
      Graph s = scale_metric(g, lambda);
      for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
          if (std::isinf(g.distance(u, v))) CHECK(std::isinf(s.distance(u, v)));
          else CHECK(s.distance(u, v) == doctest::Approx(lambda * g.distance(u, v)));
        }
    }
  }
}

TEST_CASE("packings and covers are invariant under scaling") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    Graph g = oracle::random_graph(seed * 79, n, 0.3, true);
    std::mt19937_64 rng(seed);
    VertexSet x = oracle::random_subset(rng, n), y = oracle::random_subset(rng, n);
    for (double lambda : {1.0 / 3, 2.0}) {
      Graph s = scale_metric(g, lambda);
      for (double r : {1.0, 2.0})
        for (double ell : {0.0, 2.0}) {
          auto plain = max_far_packing(g, x, y, ell, r);
          auto scaled = max_far_packing(s, x, y, lambda * ell, lambda * r);
          REQUIRE(plain.size() == scaled.size());
          for (std::size_t i = 0; i < plain.size(); ++i) CHECK(plain.paths[i].sequence == scaled.paths[i].sequence);
        }
      for (double beta : {0.0, 1.0}) {
        auto plain = min_ball_hitting(g, LxyFamily{1, x, y}, beta);
        auto scaled = min_ball_hitting(s, LxyFamily{lambda, x, y}, lambda * beta);
        CHECK(plain.count() == scaled.count());
      }
    }
  }
}

TEST_CASE("subdividing to unit lengths") {
  Graph unit = path_graph(4);
  CHECK(subdivide_to_unit(unit) == unit);

  Graph one(2);
  one.add_edge(0, 1, 2.5);
  Graph split = subdivide_to_unit(one);
  CHECK(split.vertex_count() == 4);
  CHECK(split.edge_count() == 3);
  for (const auto& e : split.edges()) CHECK(e.weight == doctest::Approx(2.5 / 3));
  CHECK(split.distance(0, 1) == doctest::Approx(2.5));

  Graph heavy(3);
  heavy.add_edge(0, 1, 3);
  heavy.add_edge(1, 2, 3);
  heavy.add_edge(0, 2, 3);
  Graph light = subdivide_to_unit(heavy);
  CHECK(light.vertex_count() == 3 + 3 * 2);
  for (Vertex u = 0; u < 3; ++u)
    for (Vertex v = 0; v < 3; ++v) CHECK(light.distance(u, v) == doctest::Approx(heavy.distance(u, v)));

  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Graph g = oracle::random_graph(seed * 83, 2 + static_cast<int>(seed % 6), 0.4, true, 4);
    Graph s = subdivide_to_unit(g);
    for (const auto& e : s.edges()) CHECK(e.weight <= 1 + 1e-12);
    for (Vertex u = 0; u < g.vertex_count(); ++u)
      for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(s.distance(u, v) == doctest::Approx(g.distance(u, v)));
  }
}

TEST_CASE("pulling hitting sets back") {
  Grid small = grid(3, 3);
  check_pullback(small.graph, small.graph, identity(small.graph), 1, 0, small.column(0), small.column(2));

  Graph p6 = path_graph(6);
  auto sub = one_subdivision(p6);
  check_pullback(p6, sub.graph, sub.inclusion, 1, 0, VertexSet{0}, VertexSet{5});
  check_pullback(p6, sub.graph, sub.inclusion, 2, 1, VertexSet{0}, VertexSet{5});

  Grid g = grid(3, 4);
  auto gsub = one_subdivision(g.graph);
  check_pullback(g.graph, gsub.graph, gsub.inclusion, 2, 0, g.column(0), g.column(3));

  CHECK_THROWS_AS(pullback_hitting_set(p6, p6, identity(p6), VertexSet{}, 1, 0, VertexSet{0}, VertexSet{5}),
                  PreconditionError);
  Graph heavy(2);
  heavy.add_edge(0, 1, 2);
  CHECK_THROWS_AS(pullback_hitting_set(heavy, heavy, identity(heavy), VertexSet{0}, 1, 0, VertexSet{0}, VertexSet{1}),
                  PreconditionError);
}

TEST_CASE("pullbacks hit every source path on random instances") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);
    Graph g = oracle::random_graph(seed * 89, n, 0.3, true);
    auto sub = one_subdivision(g);
    std::mt19937_64 rng(seed);
    VertexSet a = oracle::random_subset(rng, n), b = oracle::random_subset(rng, n);
    check_pullback(g, sub.graph, sub.inclusion, 1 + static_cast<double>(seed % 2), static_cast<double>(seed % 3), a, b);
  }
}

TEST_CASE("radius coefficient ledger") {
  ExcludedMinorDescriptor apex;
  apex.apex = true;
  CHECK(c_h_ledger(apex).c_h == 14);

  ExcludedMinorDescriptor linkless;
  linkless.special = "linkless";
  CHECK(c_h_ledger(linkless).c_h == 22);
  linkless.finite_host = false;
  CHECK(c_h_ledger(linkless).c_h == 60);

  ExcludedMinorDescriptor knotless;
  knotless.special = "knotless";
  CHECK(c_h_ledger(knotless).c_h == 30);
  knotless.finite_host = false;
  CHECK(c_h_ledger(knotless).c_h == 68);

  ExcludedMinorDescriptor infinite;
  infinite.finite_host = false;
  infinite.genus = 0;
  CHECK(c_h_ledger(infinite).c_h == 44);
  infinite.genus = 2;
  CHECK(c_h_ledger(infinite).c_h == 60);

  ExcludedMinorDescriptor planar;
  planar.planar = true;
  auto half = c_h_ledger(planar);
  CHECK(half.half_radius);
  CHECK_FALSE(half.c_h);

  ExcludedMinorDescriptor general;
  general.genus = 1;
  CHECK(c_h_ledger(general).c_h == 26);
  general.genus.reset();
  CHECK_THROWS_AS(c_h_ledger(general), InputError);

  ExcludedMinorDescriptor mixed;
  mixed.planar = true;
  mixed.special = "linkless";
  CHECK_THROWS_AS(c_h_ledger(mixed), InputError);
}
