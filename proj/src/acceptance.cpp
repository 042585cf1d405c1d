#include "coarse_menger/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "coarse_menger/covering.hpp"
#include "coarse_menger/generators.hpp"
#include "coarse_menger/models.hpp"
#include "coarse_menger/packing.hpp"
#include "coarse_menger/serialize.hpp"
#include "coarse_menger/tangle.hpp"
#include "coarse_menger/transfer.hpp"
#include "coarse_menger/tree.hpp"

namespace coarse_menger {

const std::vector<CriterionInfo>& acceptance_criteria() {
  static const std::vector<CriterionInfo> list = {
      {1, "menger", "far packing, ball cover and max flow agree at l = 0, r = 1", 60},
      {2, "gallai", "A-path dichotomy with |Z| <= 2k - 2", 120},
      {3, "grid", "grid lower-bound instances", 120},
      {4, "weak-duality", "r > 2 beta implies cover >= packing on exact cells", 120},
      {5, "helly", "subtree packing or hitting", 60},
      {6, "easy-tree", "tree-decomposition hitting budgets", 180},
      {7, "rooted-p3", "rooted path models in the grid", 300},
      {8, "constants", "transfer constants and intermediates", 1},
      {9, "pullback", "pulled-back hitting sets on 1-subdivisions", 120},
      {10, "scaling", "invariance under metric rescaling", 60},
      {11, "tangle", "trichotomy always certifies", 300},
      {12, "determinism", "identical reports for identical seeds", 600},
  };
  return list;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  const int threads = std::max(1, std::min(jobs, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_lock;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> hold(error_lock);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

using nlohmann::json;

struct Draw {
  std::mt19937_64 rng;
  int below(int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); }
};

// Collects failures; only the first few are kept verbatim.
struct Tally {
  int failures = 0;
  std::vector<std::string> examples;
  void fail(const std::string& why) {
    ++failures;
    if (examples.size() < 5) examples.push_back(why);
  }
  bool ok() const { return failures == 0; }
};

struct Context {
  std::uint64_t seed;
  bool faulty;
  int jobs;
  const Caps& caps;
};

struct Verdict {
  bool passed = false;
  std::string detail;
  json data;
};

Verdict finish(const Tally& t, json data, const std::string& summary) {
  data["failures"] = t.failures;
  data["examples"] = t.examples;
  return {t.ok(), t.ok() ? summary : t.examples.front(), std::move(data)};
}

std::string at(int index) { return "instance " + std::to_string(index) + ": "; }

// ---- independent oracles -------------------------------------------------------------

// Every vertex of c.z within c.radius of some center.
bool covered_by_centers(const Graph& g, const CenteredSet& c) {
  for (Vertex v : c.z) {
    bool near = false;
    for (Vertex w : c.centers) near = near || within(g.distance(w, v), c.radius);
    if (!near) return false;
  }
  return true;
}

double gap(const Graph& g, const VertexSet& s, const VertexSet& t) {
  double best = kInfinity;
  for (Vertex u : s)
    for (Vertex v : t) best = std::min(best, g.distance(u, v));
  return best;
}

// Largest number of sets pairwise at distance >= r, by subset enumeration (at most ~16 sets).
std::vector<int> brute_far_sets(const Graph& g, const std::vector<VertexSet>& sets, double r) {
  const int m = static_cast<int>(sets.size());
  std::vector<int> best;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> pick;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) pick.push_back(i);
    if (pick.size() <= best.size()) continue;
    bool fine = true;
    for (std::size_t i = 0; i < pick.size() && fine; ++i)
      for (std::size_t j = i + 1; j < pick.size() && fine; ++j)
        fine = at_least(gap(g, sets[pick[i]], sets[pick[j]]), r);
    if (fine) best = pick;
  }
  return best;
}

// Walk check: consecutive vertices adjacent, no repeats.
bool walks_simply(const Graph& g, const std::vector<Vertex>& seq) {
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!g.has_vertex(seq[i]) || seen[seq[i]]) return false;
    seen[seq[i]] = 1;
    if (i > 0 && !g.adjacent(seq[i - 1], seq[i])) return false;
  }
  return !seq.empty();
}

// G - Z has an A-path iff some component of G - Z holds two vertices of A - Z.
bool a_path_avoids(const Graph& g, const VertexSet& a, const VertexSet& z) {
  for (const auto& comp : components(g, set_difference(g.vertices(), z)))
    if (set_intersection(comp, a).size() >= 2) return true;
  return false;
}

VertexSet grow_connected(const Graph& g, const VertexSet& within_set, Vertex start, int size, Draw& d) {
  std::vector<Vertex> set{start};
  while (static_cast<int>(set.size()) < size) {
    VertexSet current(set);
    std::vector<Vertex> frontier;
    for (Vertex v : open_neighborhood(g, current))
      if (within_set.contains(v)) frontier.push_back(v);
    if (frontier.empty()) break;
    set.push_back(frontier[static_cast<std::size_t>(d.below(static_cast<int>(frontier.size())))]);
  }
  return VertexSet(set);
}

// ---- criteria --------------------------------------------------------------------------

Verdict menger_criterion(const Context& cx) {
  RandomOptions o;
  o.min_vertices = 2;
  o.max_vertices = 12;
  o.edge_probability = 0.3;
  o.connected = true;
  auto specs = random_instances(cx.seed, 200, o);
  struct Row {
    std::size_t packing = 0, cover = 0, flow = 0;
    bool exact = false;
  };
  std::vector<Row> rows(specs.size());
  parallel_for(static_cast<int>(specs.size()), cx.jobs, [&](int i) {
    const auto& s = specs[i];
    auto p = max_far_packing(s.graph, s.x, s.y, 0, 1, SearchMode::exact, cx.caps);
    auto c = min_ball_hitting(s.graph, LxyFamily{0, s.x, s.y}, 0, SearchMode::exact, cx.caps);
    rows[i] = {p.size(), c.count(), static_cast<std::size_t>(menger_packing(s.graph, s.x, s.y)), p.optimal && c.optimal};
    if (cx.faulty) rows[i].flow += 1;
  });
  Tally t;
  std::size_t total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    total += r.flow;
    if (!r.exact) t.fail(at(static_cast<int>(i)) + "a solver did not prove optimality");
    if (r.packing != r.cover || r.cover != r.flow)
      t.fail(at(static_cast<int>(i)) + "packing " + std::to_string(r.packing) + ", cover " + std::to_string(r.cover) +
             ", max flow " + std::to_string(r.flow));
  }
  return finish(t, {{"instances", rows.size()}, {"sum_of_values", total}},
                "200 instances agree (values sum to " + std::to_string(total) + ")");
}

Verdict gallai_criterion(const Context& cx) {
  RandomOptions o;
  o.min_vertices = 2;
  o.max_vertices = 12;
  o.edge_probability = 0.3;
  auto specs = random_instances(cx.seed, 100, o);
  std::vector<GallaiVerdict> verdicts(specs.size());
  parallel_for(static_cast<int>(specs.size()), cx.jobs, [&](int i) {
    verdicts[i] = gallai_check(specs[i].graph, specs[i].a, 1 + i % 3, cx.caps);
    if (cx.faulty) {
      auto& v = verdicts[i];
      bool was_packing = v.branch == GallaiVerdict::Branch::packing;
      v.branch = was_packing ? GallaiVerdict::Branch::hitting : GallaiVerdict::Branch::packing;
      v.paths.clear();
      v.hitting_set = VertexSet{};
    }
  });
  Tally t;
  int packing = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& g = specs[i].graph;
    const auto& a = specs[i].a;
    const auto& v = verdicts[i];
    const int k = 1 + static_cast<int>(i) % 3;
    const std::string where = at(static_cast<int>(i));
    if (v.branch == GallaiVerdict::Branch::packing) {
      ++packing;
      if (static_cast<int>(v.paths.size()) != k) t.fail(where + "packing branch without k paths");
      VertexSet used;
      for (const auto& p : v.paths) {
        const auto& s = p.sequence;
        if (!walks_simply(g, s) || s.size() < 2 || !a.contains(s.front()) || !a.contains(s.back()))
          t.fail(where + "returned sequence is not an A-path");
        if (intersects(used, p.vertex_set())) t.fail(where + "paths share a vertex");
        used = set_union(used, p.vertex_set());
      }
    } else {
      if (static_cast<int>(v.hitting_set.size()) > 2 * k - 2)
        t.fail(where + "hitting set of size " + std::to_string(v.hitting_set.size()) + " exceeds 2k - 2");
      if (a_path_avoids(g, a, v.hitting_set)) t.fail(where + "an A-path avoids the hitting set");
    }
    if (!cx.faulty && !v.valid) t.fail(where + "verdict not self-validated");
  }
  return finish(t, {{"instances", specs.size()}, {"packing_branch", packing}},
                "100 instances validated (" + std::to_string(packing) + " on the packing branch)");
}

Verdict grid_criterion(const Context& cx) {
  Tally t;
  json cases = json::array();
  for (auto [r, n] : {std::pair{3, 9}, std::pair{5, 15}}) {
    auto spec = menger_lower_bound_instance(r, n);
    if (cx.faulty) spec.annotations.front().expected = 2;
    verify_annotations(spec, cx.caps);
    json observed = json::object();
    for (const auto& note : spec.annotations) {
      observed[note.property] = note.observed;
      if (!note.verified || !*note.verified)
        t.fail("grid " + std::to_string(r) + "x" + std::to_string(n) + ": " + note.property + " observed " +
               note.observed.dump());
    }
    cases.push_back({{"r", r}, {"n", n}, {"observed", observed}});
  }
  return finish(t, {{"cases", cases}}, "3x9 and 5x15 match the claimed bounds");
}

Verdict weak_duality_criterion(const Context& cx) {
  RandomOptions o;
  o.min_vertices = 2;
  o.max_vertices = 10;
  o.connected = true;
  auto specs = random_instances(cx.seed, 60, o);
  std::vector<std::vector<std::string>> found(specs.size());
  std::vector<std::size_t> exact(specs.size(), 0);
  parallel_for(static_cast<int>(specs.size()), cx.jobs, [&](int i) {
    const auto& s = specs[i];
    auto report = duality_sweep(s.graph, s.x, s.y, i % 3, {1, 2, 3, 4}, {0, 1}, cx.caps);
    if (cx.faulty)
      for (auto& cell : report.cover_by_radius)
        if (cell.value > 0) cell.value -= 1;
    for (const auto& c : report.packing_by_r) exact[i] += c.exact;
    for (const auto& c : report.cover_by_radius) exact[i] += c.exact;
    found[i] = weak_duality_violations(report);
  });
  Tally t;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    cells += exact[i];
    for (const auto& line : found[i]) t.fail(at(static_cast<int>(i)) + line);
  }
  if (cells == 0) t.fail("no exact cells were produced");
  return finish(t, {{"instances", specs.size()}, {"exact_cells", cells}},
                std::to_string(cells) + " exact cells, no violations");
}

Verdict helly_criterion(const Context& cx) {
  Draw d{std::mt19937_64(cx.seed)};
  struct Case {
    Graph tree;
    std::vector<VertexSet> subtrees;
    int k;
  };
  std::vector<Case> cases;
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + d.below(12);
    Graph tree(n);
    for (Vertex v = 1; v < n; ++v) tree.add_edge(d.below(v), v);
    std::vector<VertexSet> subtrees;
    const int m = 1 + d.below(10);
    const VertexSet all = tree.vertices();
    for (int j = 0; j < m; ++j) subtrees.push_back(grow_connected(tree, all, d.below(n), 1 + d.below(std::min(n, 5)), d));
    cases.push_back({std::move(tree), std::move(subtrees), 1 + d.below(4)});
  }
  std::vector<HellyResult> results(cases.size());
  parallel_for(static_cast<int>(cases.size()), cx.jobs, [&](int i) {
    results[i] = tree_helly(cases[i].tree, cases[i].subtrees, cases[i].k);
    if (cx.faulty) {
      results[i].packing = !results[i].packing;
      results[i].disjoint.clear();
      results[i].hitting = VertexSet{};
    }
  });
  Tally t;
  int packing = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const auto& h = results[i];
    const std::string where = at(static_cast<int>(i));
    // Largest pairwise disjoint subfamily, exhaustively.
    std::size_t best = 0;
    const int m = static_cast<int>(c.subtrees.size());
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      VertexSet used;
      bool fine = true;
      std::size_t size = 0;
      for (int j = 0; j < m && fine; ++j)
        if (mask >> j & 1) {
          fine = !intersects(used, c.subtrees[j]);
          used = set_union(used, c.subtrees[j]);
          ++size;
        }
      if (fine) best = std::max(best, size);
    }
    if (h.packing) {
      ++packing;
      std::vector<int> idx = h.disjoint;
      std::sort(idx.begin(), idx.end());
      bool distinct = std::adjacent_find(idx.begin(), idx.end()) == idx.end();
      if (static_cast<int>(idx.size()) != c.k || !distinct) t.fail(where + "packing branch without k distinct members");
      VertexSet used;
      for (int j : h.disjoint) {
        if (j < 0 || j >= m) {
          t.fail(where + "index out of range");
          continue;
        }
        if (intersects(used, c.subtrees[j])) t.fail(where + "packed subtrees intersect");
        used = set_union(used, c.subtrees[j]);
      }
    } else {
      if (static_cast<int>(h.hitting.size()) > c.k - 1) t.fail(where + "hitting set larger than k - 1");
      for (const auto& s : c.subtrees)
        if (!intersects(s, h.hitting)) t.fail(where + "a subtree is missed");
      if (static_cast<int>(best) >= c.k) t.fail(where + "hitting branch although k disjoint subtrees exist");
    }
  }
  return finish(t, {{"instances", cases.size()}, {"packing_branch", packing}},
                "500 instances validated (" + std::to_string(packing) + " on the packing branch)");
}

// c = 1: shortest paths between random pairs. c = 2: products of small connected pools
// around two vertices at distance >= 4, so components stay disjoint and non-adjacent.
ExchangeableFamily easy_tree_family(const Graph& g, Draw& d) {
  const int n = g.vertex_count();
  ExchangeableFamily f;
  std::vector<std::pair<Vertex, Vertex>> far;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (at_least(g.distance(u, v), 4)) far.emplace_back(u, v);
  if (!far.empty() && d.below(2) == 0) {
    auto [u, v] = far[static_cast<std::size_t>(d.below(static_cast<int>(far.size())))];
    auto pool = [&](Vertex c) {
      std::vector<VertexSet> out{VertexSet{c}};
      for (const Arc& a : g.neighbors(c)) out.push_back(VertexSet{c, a.to});
      return out;
    };
    auto left = pool(u), right = pool(v);
    f.component_count = 2;
    for (const auto& p : left)
      for (const auto& q : right) f.members.push_back({p, q});
    return f;
  }
  const int m = 1 + d.below(6);
  std::set<VertexSet> seen;
  for (int j = 0; j < m; ++j) {
    auto path = shortest_hop_path(g, d.below(n), d.below(n));
    VertexSet s(path);
    if (seen.insert(s).second) f.members.push_back({s});
  }
  return f;
}

Verdict easy_tree_criterion(const Context& cx) {
  RandomOptions o;
  o.family = RandomFamily::partial_k_tree;
  o.min_vertices = 5;
  o.max_vertices = 12;
  o.tree_width = 2;
  auto specs = random_instances(cx.seed, 100, o);
  Draw d{std::mt19937_64(cx.seed ^ 0xfeedULL)};
  std::vector<EasyTreeInput> inputs;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    EasyTreeInput in;
    in.g = specs[i].graph;
    in.l = in.g.vertices();
    in.family = easy_tree_family(in.g, d);
    in.td = *specs[i].decomposition;
    in.r = d.below(2);
    in.k = 1 + d.below(3);
    in.xi = 3;
    in.eta = 0;
    inputs.push_back(std::move(in));
  }
  std::vector<EasyTreeResult> results(inputs.size());
  parallel_for(static_cast<int>(inputs.size()), cx.jobs, [&](int i) {
    results[i] = easy_tree_hitting(inputs[i], cx.caps);
    if (cx.faulty) {
      auto& res = results[i];
      if (res.packing && res.members.size() >= 2) res.members[1] = res.members[0];
      if (!res.packing) res.hitting.z = VertexSet{};
    }
  });
  Tally t;
  int packing = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& in = inputs[i];
    const auto& res = results[i];
    const Graph& g = in.g;
    const int c = in.family.component_count;
    const std::string where = at(static_cast<int>(i));
    auto joined = [](const std::vector<VertexSet>& parts) {
      VertexSet out;
      for (const auto& p : parts) out = set_union(out, p);
      return out;
    };
    if (res.packing) {
      ++packing;
      if (static_cast<int>(res.members.size()) != in.k) t.fail(where + "packing branch without k members");
      for (const auto& m : res.members)
        if (std::find(in.family.members.begin(), in.family.members.end(), m) == in.family.members.end())
          t.fail(where + "packed member is not in the family");
      for (std::size_t a = 0; a < res.members.size(); ++a)
        for (std::size_t b = a + 1; b < res.members.size(); ++b)
          if (!(gap(g, joined(res.members[a]), joined(res.members[b])) > 2 * in.r + kTolerance))
            t.fail(where + "packed members within 2r");
    } else {
      const int budget = (c * in.k - 1) * in.xi;
      auto cert = certify_centered(g, res.hitting.z, budget, in.eta + in.r, SearchMode::exact, cx.caps);
      if (!cert) t.fail(where + "hitting set is not ((ck - 1) xi, eta + r)-centered");
      for (const auto& m : in.family.members)
        if (!intersects(joined(m), res.hitting.z)) t.fail(where + "a family member is missed");
    }
  }
  return finish(t, {{"instances", inputs.size()}, {"packing_branch", packing}},
                "100 instances validated (" + std::to_string(packing) + " on the packing branch)");
}

Verdict rooted_p3_criterion(const Context& cx) {
  Tally t;
  json sizes = json::array();
  std::size_t previous = 0;
  for (int w = 3; w <= 5; ++w) {
    auto spec = rooted_p3_grid(w);
    const Graph& g = spec.graph;
    const auto& p = *spec.rooted;
    const std::string where = "w = " + std::to_string(w) + ": ";
    bool disjoint = has_disjoint_rooted_models(g, p, cx.caps);
    if (cx.faulty) disjoint = !disjoint;
    auto ep = rooted_fat_minor_ep(g, *spec.decomposition, p, 2, 1, cx.caps);
    if (disjoint) t.fail(where + "exhaustive search found two disjoint models");
    if (ep.packing) t.fail(where + "the decomposition route returned two models");
    if (!covered_by_centers(g, ep.hitting)) t.fail(where + "hitting set is not covered by its centers");
    if (static_cast<int>(ep.hitting.center_count()) > ep.bag_size) t.fail(where + "more than w' centers");
    if (find_rooted_model(g, p, set_difference(g.vertices(), ep.hitting.z), cx.caps))
      t.fail(where + "a rooted model avoids the hitting set");
    auto minimum = min_model_hitting_set(g, p, cx.caps);
    if (find_rooted_model(g, p, set_difference(g.vertices(), minimum), cx.caps))
      t.fail(where + "the minimum hitting set misses a model");
    if (minimum.size() < previous) t.fail(where + "minimum hitting size decreased");
    previous = minimum.size();
    sizes.push_back({{"w", w}, {"min_hitting", minimum.size()}, {"ep_hitting", ep.hitting.z.size()}, {"route", ep.route}});
  }
  return finish(t, {{"grids", sizes}}, "no two disjoint models for w = 3, 4, 5; minimum hitting sizes nondecreasing");
}

Verdict constants_criterion(const Context& cx) {
  struct Expected {
    double m, a, c1, c2;
    RemoteChain chain;
  };
  // Hand-derived with f = 5, g = 7 at k = 2, r = 3, ell = 1.
  const std::vector<Expected> table = {
      {1, 0, 4, 4, {7, 1, 5, 7, 14, 16, 1, 7, 6, 16}},
      {2, 1, 39, 24, {45, 5, 5, 7, 34, 44, 12, 29, 6, 44}},
      {3, 2, 138, 62, {147, 9, 5, 7, 60, 84, 33, 71, 6, 84}},
  };
  auto w = constant_witness(5, 7);
  Tally t;
  json rows = json::array();
  for (const auto& e : table) {
    auto c = transfer_constants(e.m, e.a);
    if (cx.faulty) c.c1 += 1;
    auto ch = remote_chain(e.m, e.a, w, 2, 3, 1);
    const std::string where = "(m, a) = (" + std::to_string(static_cast<int>(e.m)) + ", " +
                              std::to_string(static_cast<int>(e.a)) + "): ";
    if (c.c1 != e.c1 || c.c2 != e.c2) t.fail(where + "c1 = " + std::to_string(c.c1) + ", c2 = " + std::to_string(c.c2));
    const std::vector<std::pair<const char*, std::pair<double, double>>> fields = {
        {"r'", {ch.r_prime, e.chain.r_prime}},
        {"l'", {ch.ell_prime, e.chain.ell_prime}},
        {"xi1", {ch.xi1, e.chain.xi1}},
        {"eta1", {ch.eta1, e.chain.eta1}},
        {"eta2", {ch.eta2, e.chain.eta2}},
        {"eta3", {ch.eta3, e.chain.eta3}},
        {"l''", {ch.ell_double_prime, e.chain.ell_double_prime}},
        {"eta4", {ch.eta4, e.chain.eta4}},
        {"f", {ch.f_out, e.chain.f_out}},
        {"g", {ch.g_out, e.chain.g_out}},
    };
    for (const auto& [name, pair] : fields)
      if (pair.first != pair.second)
        t.fail(where + name + " = " + std::to_string(pair.first) + ", expected " + std::to_string(pair.second));
    auto remote = transfer_witness(e.m, e.a, w, TransferVariant::remote);
    if (remote.f(2, 3, 1) != e.chain.f_out || remote.g(2, 3, 1) != e.chain.g_out)
      t.fail(where + "transfer_witness disagrees with its intermediates");
    rows.push_back({{"m", e.m}, {"a", e.a}, {"constants", as_json(c)}, {"chain", as_json(ch)}});
  }
  return finish(t, {{"rows", rows}}, "three (m, a) pairs match exactly");
}

Verdict pullback_criterion(const Context& cx) {
  RandomOptions o;
  o.min_vertices = 2;
  o.max_vertices = 10;
  o.edge_probability = 0.3;
  o.connected = true;
  auto specs = random_instances(cx.seed, 50, o);
  struct Row {
    std::string failure;
    std::size_t checked_paths = 0;
  };
  std::vector<Row> rows(specs.size() * 2);
  parallel_for(static_cast<int>(rows.size()), cx.jobs, [&](int job) {
    const int i = job / 2;
    const double ell = 2.0 * (job % 2);
    const auto& s = specs[i];
    auto sub = one_subdivision(s.graph);
    const auto& q = sub.inclusion;
    std::vector<Vertex> ia, ib;
    for (Vertex v : s.x) ia.push_back(q.map[v]);
    for (Vertex v : s.y) ib.push_back(q.map[v]);
    const double target_ell = q.m * ell + 3 * q.a;
    auto target_cover =
        min_ball_hitting(sub.graph, LxyFamily{target_ell, VertexSet(ia), VertexSet(ib)}, 0, SearchMode::exact, cx.caps);
    const double r = 1 + i % 3;
    auto res = pullback_hitting_set(s.graph, sub.graph, q, target_cover.certificate.z, r, ell, s.x, s.y, cx.caps);
    VertexSet z = cx.faulty ? VertexSet{} : res.z;
    auto all = enumerate_paths(s.graph, ell, s.x, s.y, std::nullopt, cx.caps);
    rows[job].checked_paths = all.paths.size();
    if (all.truncated) rows[job].failure = "path enumeration truncated";
    for (const auto& p : all.paths)
      if (!intersects(p.vertex_set(), z)) {
        rows[job].failure = "ell = " + std::to_string(static_cast<int>(ell)) + ": a source path avoids the pullback";
        break;
      }
  });
  Tally t;
  std::size_t paths = 0;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    paths += rows[j].checked_paths;
    if (!rows[j].failure.empty()) t.fail(at(static_cast<int>(j / 2)) + rows[j].failure);
  }
  return finish(t, {{"instances", specs.size()}, {"paths_checked", paths}},
                "50 graphs, ell in {0, 2}: every one of " + std::to_string(paths) + " source paths is hit");
}

std::vector<std::vector<Vertex>> sequences(const PackingSolution& s) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& p : s.paths) out.push_back(p.sequence);
  return out;
}

Verdict scaling_criterion(const Context& cx) {
  RandomOptions o;
  o.min_vertices = 3;
  o.max_vertices = 9;
  o.connected = true;
  o.max_weight = 3;
  auto specs = random_instances(cx.seed, 50, o);
  std::vector<std::string> failures(specs.size());
  std::vector<std::size_t> comparisons(specs.size(), 0);
  parallel_for(static_cast<int>(specs.size()), cx.jobs, [&](int i) {
    const auto& s = specs[i];
    const double ell = 2.0 * (i % 2), r = 1 + i % 3, beta = (i / 2) % 2;
    auto base_pack = max_far_packing(s.graph, s.x, s.y, ell, r, SearchMode::exact, cx.caps);
    auto base_cover = min_ball_hitting(s.graph, LxyFamily{ell, s.x, s.y}, beta, SearchMode::exact, cx.caps);
    for (double lambda : {2.0, 1.0 / 3.0}) {
      Graph scaled = scale_metric(s.graph, lambda);
      auto pack = max_far_packing(scaled, s.x, s.y, lambda * ell, lambda * r, SearchMode::exact, cx.caps);
      auto cover = min_ball_hitting(scaled, LxyFamily{lambda * ell, s.x, s.y}, lambda * beta, SearchMode::exact, cx.caps);
      std::size_t pack_size = pack.size() + (cx.faulty ? 1 : 0);
      const std::string tag = "lambda " + std::to_string(lambda) + ": ";
      if (!pack.optimal || !cover.optimal || !base_pack.optimal || !base_cover.optimal)
        failures[i] = tag + "a solver did not prove optimality";
      else if (pack_size != base_pack.size() || sequences(pack) != sequences(base_pack))
        failures[i] = tag + "packing changed (" + std::to_string(base_pack.size()) + " -> " + std::to_string(pack_size) + ")";
      else if (cover.count() != base_cover.count() || cover.certificate.centers != base_cover.certificate.centers)
        failures[i] = tag + "cover changed";
      comparisons[i] += 2;
      if (!failures[i].empty()) return;
    }
  });
  Tally t;
  std::size_t total = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    total += comparisons[i];
    if (!failures[i].empty()) t.fail(at(static_cast<int>(i)) + failures[i]);
  }
  return finish(t, {{"instances", specs.size()}, {"comparisons", total}},
                "50 weighted graphs, lambda in {2, 1/3}: sizes and witnesses unchanged");
}

// A connected family inside l whose members are never k of them pairwise r-far.
std::vector<VertexSet> tangle_family(const Graph& g, const VertexSet& l, int k, double r, Draw& d) {
  std::vector<Vertex> pool(l.begin(), l.end());
  std::vector<char> mask = l.mask(g.vertex_count());
  std::vector<VertexSet> family;
  const int m = 2 + d.below(5);
  for (int j = 0; j < m; ++j) {
    Vertex s = pool[static_cast<std::size_t>(d.below(static_cast<int>(pool.size())))];
    VertexSet member;
    switch (d.below(3)) {
      case 0:
        member = VertexSet{s};
        break;
      case 1:
        member = grow_connected(g, l, s, 1 + d.below(3), d);
        break;
      default: {
        Vertex t = pool[static_cast<std::size_t>(d.below(static_cast<int>(pool.size())))];
        auto path = shortest_hop_path(g, s, t, mask);
        member = path.empty() ? VertexSet{s} : VertexSet(path);
      }
    }
    if (std::find(family.begin(), family.end(), member) == family.end()) family.push_back(member);
  }
  for (auto best = brute_far_sets(g, family, r); static_cast<int>(best.size()) >= k; best = brute_far_sets(g, family, r))
    family.erase(family.begin() + best.back());
  return family;
}

Verdict tangle_criterion(const Context& cx) {
  RandomOptions o;
  o.min_vertices = 3;
  o.max_vertices = 9;
  o.connected = true;
  auto specs = random_instances(cx.seed, 100, o);
  Draw d{std::mt19937_64(cx.seed ^ 0x7a9ULL)};
  struct Case {
    VertexSet l;
    std::vector<VertexSet> family;
    int k, theta;
    double r, r_prime;
    CenteredSet z;
    int xi;
  };
  std::vector<Case> cases;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Graph& g = specs[i].graph;
    Case c;
    c.theta = 1 + static_cast<int>(i % 2);
    c.k = 2 + static_cast<int>((i / 2) % 2);
    c.r = 1 + d.below(3);
    c.r_prime = std::ceil(c.r / 2);
    c.l = g.vertices();
    c.xi = 0;
    if (i % 4 == 3) {
      Vertex cut = d.below(g.vertex_count());
      auto parts = components(g, set_difference(g.vertices(), VertexSet{cut}));
      if (!parts.empty()) {
        c.l = parts.front();
        c.z = CenteredSet{VertexSet{cut}, VertexSet{cut}, 0};
        c.xi = 1;
      }
    }
    c.family = tangle_family(g, c.l, c.k, c.r, d);
    cases.push_back(std::move(c));
  }
  std::vector<TrichotomyResult> results(cases.size());
  std::vector<std::string> errors(cases.size());
  parallel_for(static_cast<int>(cases.size()), cx.jobs, [&](int i) {
    const auto& c = cases[i];
    try {
      results[i] = easy_tangle_trichotomy(specs[i].graph, c.l, c.family, c.k, c.theta, c.r, c.r_prime, c.z, c.xi, 0,
                                          cx.caps);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
    if (cx.faulty) {
      auto& res = results[i];
      res.z_star.centers = VertexSet{};
      res.separation = Separation{res.separation.b, res.separation.a};
      if (res.tangle)
        for (auto& s : res.tangle->members) s = Separation{s.b, s.a};
    }
  });
  Tally t;
  int counts[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Graph& g = specs[i].graph;
    const auto& c = cases[i];
    const auto& res = results[i];
    const std::string where = at(static_cast<int>(i));
    if (!errors[i].empty()) {
      t.fail(where + errors[i]);
      continue;
    }
    const VertexSet near_z = neighborhood(g, c.z.z, c.r_prime);
    std::vector<VertexSet> fresh;
    for (const auto& f : c.family)
      if (!intersects(f, near_z)) fresh.push_back(f);
    if (res.outcome >= 1 && res.outcome <= 3) ++counts[res.outcome];
    if (res.outcome == 1) {
      const auto& zs = res.z_star;
      if (!covered_by_centers(g, zs) || static_cast<int>(zs.center_count()) > c.xi + 3 * c.theta - 3 ||
          !within(zs.radius, c.r_prime))
        t.fail(where + "Z* is not (xi + 3 theta - 3, eta + r')-centered");
      if (!is_subset(near_z, zs.z)) t.fail(where + "Z* misses part of N[Z]");
      for (const auto& f : c.family)
        if (!intersects(f, zs.z)) t.fail(where + "Z* misses a member");
    } else if (res.outcome == 2) {
      const auto& s = res.separation;
      VertexSet sep = s.separator();
      bool split = set_union(s.a, s.b) == c.l && static_cast<int>(sep.size()) < c.theta;
      for (const Edge& e : g.edges())
        if (c.l.contains(e.u) && c.l.contains(e.v)) {
          bool ua = s.a.contains(e.u) && !s.b.contains(e.u), ub = s.b.contains(e.u) && !s.a.contains(e.u);
          bool va = s.a.contains(e.v) && !s.b.contains(e.v), vb = s.b.contains(e.v) && !s.a.contains(e.v);
          split = split && !((ua && vb) || (ub && va));
        }
      if (!split) t.fail(where + "outcome 2 does not return a separation of order < theta");
      const VertexSet near_sep = neighborhood(g, sep, c.r_prime);
      for (const VertexSet* side : {&s.a, &s.b}) {
        std::vector<VertexSet> deep;
        VertexSet region = set_difference(*side, near_sep);
        for (const auto& f : fresh)
          if (is_subset(f, region)) deep.push_back(f);
        if (static_cast<int>(brute_far_sets(g, deep, c.r).size()) >= c.k - 1)
          t.fail(where + "a side holds k - 1 far members");
      }
    } else if (res.outcome == 3) {
      if (!res.tangle) {
        t.fail(where + "outcome 3 without a tangle");
        continue;
      }
      auto verdict = verify_tangle(g, *res.tangle, cx.caps);
      if (!verdict) t.fail(where + "tangle fails " + verdict.axiom + ": " + verdict.detail);
    } else {
      t.fail(where + "no outcome");
    }
  }
  return finish(t, {{"instances", cases.size()}, {"outcomes", {counts[1], counts[2], counts[3]}}},
                "100 instances certified (outcomes 1/2/3: " + std::to_string(counts[1]) + "/" +
                    std::to_string(counts[2]) + "/" + std::to_string(counts[3]) + ")");
}

using CriterionFn = Verdict (*)(const Context&);

CriterionFn criterion_fn(int id) {
  static const CriterionFn table[] = {nullptr,           menger_criterion,    gallai_criterion,      grid_criterion,
                                      weak_duality_criterion, helly_criterion, easy_tree_criterion, rooted_p3_criterion,
                                      constants_criterion, pullback_criterion, scaling_criterion,   tangle_criterion};
  return table[id];
}

CriterionOutcome run_one(const CriterionInfo& info, const AcceptanceOptions& o) {
  CriterionOutcome out{info.id, info.key, info.title, false, 0, info.budget_seconds, "", nullptr};
  const std::uint64_t seed = o.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(info.id));
  Context cx{seed, o.fault == info.key, o.jobs, o.caps};
  auto start = std::chrono::steady_clock::now();
  try {
    Verdict v = criterion_fn(info.id)(cx);
    out.passed = v.passed;
    out.detail = v.detail;
    out.data = std::move(v.data);
  } catch (const std::exception& e) {
    out.detail = std::string("error: ") + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.passed && out.seconds >= out.budget_seconds) {
    out.passed = false;
    out.detail = "over the time budget";
  }
  return out;
}

std::vector<CriterionOutcome> run_base(const std::vector<const CriterionInfo*>& picked, const AcceptanceOptions& o) {
  std::vector<CriterionOutcome> out;
  for (const auto* info : picked) out.push_back(run_one(*info, o));
  return out;
}

json outcomes_json(const std::vector<CriterionOutcome>& list) {
  json out = json::array();
  for (const auto& c : list)
    out.push_back({{"id", c.id},
                   {"key", c.key},
                   {"title", c.title},
                   {"passed", c.passed},
                   {"seconds", c.seconds},
                   {"budget_seconds", c.budget_seconds},
                   {"detail", c.detail},
                   {"data", c.data}});
  return out;
}

}  // namespace

bool AcceptanceReport::passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionOutcome& c) { return c.passed; });
}

json AcceptanceReport::to_json() const {
  return {{"schema", kReportSchema},
          {"version", kLibraryVersion},
          {"seed", seed},
          {"fault", fault},
          {"passed", passed()},
          {"criteria", outcomes_json(criteria)}};
}

AcceptanceReport run_acceptance(const AcceptanceOptions& options) {
  const auto& all = acceptance_criteria();
  auto known = [&](const std::string& key) {
    return std::any_of(all.begin(), all.end(), [&](const CriterionInfo& c) { return key == c.key; });
  };
  for (const auto& key : options.only)
    if (!known(key)) throw InputError("unknown criterion '" + key + "'");
  if (!options.fault.empty() && !known(options.fault)) throw InputError("unknown fault target '" + options.fault + "'");
  if (options.jobs < 1) throw InputError("jobs must be at least 1");

  auto selected = [&](const CriterionInfo& c) {
    return options.only.empty() || std::find(options.only.begin(), options.only.end(), c.key) != options.only.end();
  };
  const CriterionInfo& repeat = all.back();
  std::vector<const CriterionInfo*> base;
  for (const auto& c : all)
    if (&c != &repeat && selected(c)) base.push_back(&c);
  const bool check_repeat = selected(repeat);
  // Asking for the determinism check alone reruns everything else.
  if (base.empty() && check_repeat)
    for (const auto& c : all)
      if (&c != &repeat) base.push_back(&c);

  AcceptanceReport report;
  report.seed = options.seed;
  report.fault = options.fault;
  auto first = run_base(base, options);
  if (!options.only.empty() && !selected(*base.front()) && check_repeat) {
    // Only the repeat was requested: keep the base runs out of the verdict list.
  } else {
    report.criteria = first;
  }
  if (check_repeat) {
    CriterionOutcome out{repeat.id, repeat.key, repeat.title, false, 0, repeat.budget_seconds, "", nullptr};
    auto start = std::chrono::steady_clock::now();
    auto second = run_base(base, options);
    json a = canonical_report(outcomes_json(first));
    json b = canonical_report(outcomes_json(second));
    if (options.fault == repeat.key && !b.empty()) b[0]["detail"] = "perturbed";
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.passed = a == b && out.seconds < out.budget_seconds;
    std::size_t differing = 0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) differing += a[i] != b[i];
    out.detail = a == b ? "second run of " + std::to_string(base.size()) + " criteria is canonically identical"
                        : std::to_string(differing) + " criteria differ between runs";
    out.data = {{"rerun", base.size()}, {"differing", differing}};
    report.criteria.push_back(std::move(out));
  }
  return report;
}

std::string summary_lines(const AcceptanceReport& report) {
  std::ostringstream out;
  for (const auto& c : report.criteria) {
    char seconds[32];
    std::snprintf(seconds, sizeof seconds, "%.2f", c.seconds);
    out << (c.passed ? "PASS " : "FAIL ") << (c.id < 10 ? " " : "") << c.id << " " << c.key << " (" << seconds
        << " s): " << c.detail << "\n";
  }
  return out.str();
}

}  // namespace coarse_menger
