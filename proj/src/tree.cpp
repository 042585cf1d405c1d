#include "coarse_menger/tree.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "coarse_menger/search.hpp"

namespace coarse_menger {

int TreeDecomposition::width() const {
  std::size_t widest = 0;
  for (const auto& b : bags) widest = std::max(widest, b.size());
  return static_cast<int>(widest) - 1;
}

DecompositionCheck check_decomposition(const Graph& g, const TreeDecomposition& td,
                                       const std::optional<VertexSet>& within) {
  auto fail = [](std::string why) { return DecompositionCheck{false, std::move(why)}; };
  VertexSet host = within ? *within : g.vertices();
  g.require_subset(host);
  if (!is_tree(td.tree)) return fail("tree: not a tree");
  if (static_cast<int>(td.bags.size()) != td.tree.vertex_count()) return fail("tree: one bag per node is required");
  VertexSet covered;
  for (std::size_t t = 0; t < td.bags.size(); ++t) {
    if (!is_subset(td.bags[t], host)) return fail("bag " + std::to_string(t) + " leaves the decomposed graph");
    covered = set_union(covered, td.bags[t]);
  }
  if (covered != host) return fail("vertex coverage");
  for (const Edge& e : g.edges()) {
    if (!host.contains(e.u) || !host.contains(e.v)) continue;
    bool inside = std::any_of(td.bags.begin(), td.bags.end(),
                              [&](const VertexSet& b) { return b.contains(e.u) && b.contains(e.v); });
    if (!inside) return fail("edge coverage: " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  for (Vertex v : host) {
    std::vector<Vertex> nodes;
    for (std::size_t t = 0; t < td.bags.size(); ++t)
      if (td.bags[t].contains(v)) nodes.push_back(static_cast<Vertex>(t));
    if (!is_connected(td.tree, VertexSet(nodes))) return fail("vertex trace of " + std::to_string(v) + " is disconnected");
  }
  return {};
}

TreeDecomposition min_degree_decomposition(const Graph& g) {
  const int n = g.vertex_count();
  TreeDecomposition td;
  if (n == 0) {
    td.tree = Graph(1);
    td.bags = {VertexSet{}};
    return td;
  }
  std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  std::vector<int> position(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> order;
  std::vector<std::vector<Vertex>> later_neighbors;
  for (int step = 0; step < n; ++step) {
    Vertex v = -1;
    for (Vertex u = 0; u < n; ++u)
      if (alive[u] && (v < 0 || adj[u].size() < adj[v].size())) v = u;
    std::vector<Vertex> nbrs(adj[v].begin(), adj[v].end());
    for (Vertex a : nbrs)
      for (Vertex b : nbrs)
        if (a != b) adj[a].insert(b);
    for (Vertex a : nbrs) adj[a].erase(v);
    alive[v] = 0;
    position[v] = step;
    order.push_back(v);
    later_neighbors.push_back(std::move(nbrs));
  }
  td.tree = Graph(n);
  td.bags.resize(static_cast<std::size_t>(n));
  for (int step = 0; step < n; ++step) {
    std::vector<Vertex> bag = later_neighbors[step];
    bag.push_back(order[step]);
    td.bags[step] = VertexSet(bag);
    int parent = -1;
    for (Vertex u : later_neighbors[step])
      if (parent < 0 || position[u] < parent) parent = position[u];
    // Roots of separate components are chained onto the last node.
    if (parent < 0 && step != n - 1) parent = n - 1;
    if (parent >= 0) td.tree.add_edge(step, parent);
  }
  return td;
}

bool is_separation(const Graph& g, const VertexSet& host, const Separation& s) {
  if (!is_subset(s.a, host) || !is_subset(s.b, host) || set_union(s.a, s.b) != host) return false;
  for (const Edge& e : g.edges()) {
    bool a_only_u = s.a.contains(e.u) && !s.b.contains(e.u);
    bool b_only_u = s.b.contains(e.u) && !s.a.contains(e.u);
    bool a_only_v = s.a.contains(e.v) && !s.b.contains(e.v);
    bool b_only_v = s.b.contains(e.v) && !s.a.contains(e.v);
    if ((a_only_u && b_only_v) || (b_only_u && a_only_v)) return false;
  }
  return true;
}

bool is_location(const Graph& g, const VertexSet& host, const Location& loc) {
  for (const auto& s : loc)
    if (!is_separation(g, host, s)) return false;
  for (std::size_t i = 0; i < loc.size(); ++i)
    for (std::size_t j = 0; j < loc.size(); ++j)
      if (i != j && !is_subset(loc[i].a, loc[j].b)) return false;
  return true;
}

HellyResult tree_helly(const Graph& tree, const std::vector<VertexSet>& subtrees, int k) {
  if (!is_tree(tree)) throw InputError("host is not a tree");
  if (k < 0) throw InputError("negative k");
  for (std::size_t i = 0; i < subtrees.size(); ++i) {
    tree.require_subset(subtrees[i]);
    if (subtrees[i].empty() || !is_connected(tree, subtrees[i]))
      throw InputError("family member " + std::to_string(i) + " is not a nonempty subtree");
  }
  auto depth = shortest_distances(tree, {0});
  std::vector<Vertex> top(subtrees.size());
  for (std::size_t i = 0; i < subtrees.size(); ++i)
    top[i] = *std::min_element(subtrees[i].begin(), subtrees[i].end(),
                               [&](Vertex a, Vertex b) { return depth[a] < depth[b] || (depth[a] == depth[b] && a < b); });
  std::vector<char> alive(subtrees.size(), 1);
  HellyResult out;
  std::vector<Vertex> chosen_tops;
  while (true) {
    int pick = -1;
    for (std::size_t i = 0; i < subtrees.size(); ++i) {
      if (!alive[i]) continue;
      if (pick < 0) {
        pick = static_cast<int>(i);
        continue;
      }
      Vertex a = top[i], b = top[pick];
      if (depth[a] > depth[b] || (depth[a] == depth[b] && a < b)) pick = static_cast<int>(i);
    }
    if (pick < 0) break;
    Vertex t = top[pick];
    out.disjoint.push_back(pick);
    chosen_tops.push_back(t);
    for (std::size_t i = 0; i < subtrees.size(); ++i)
      if (alive[i] && subtrees[i].contains(t)) alive[i] = 0;
  }
  if (static_cast<int>(out.disjoint.size()) >= k) {
    out.packing = true;
    out.disjoint.resize(static_cast<std::size_t>(k));
  } else {
    out.hitting = VertexSet(chosen_tops);
  }
  return out;
}

namespace {

struct SelectSearch {
  const std::vector<std::vector<VertexSet>>& families;
  std::vector<int> slots;  // family index per slot
  std::vector<std::vector<int>> picked;
  std::vector<int> used;   // per tree node: number of picked members through it
  std::size_t budget;
  std::size_t nodes = 0;

  bool free(const VertexSet& s) const {
    return std::all_of(s.begin(), s.end(), [&](Vertex t) { return used[t] == 0; });
  }
  void mark(const VertexSet& s, int delta) {
    for (Vertex t : s) used[t] += delta;
  }
  bool dfs(std::size_t slot) {
    if (slot == slots.size()) return true;
    if (++nodes > budget) throw CapacityError("multi-family selection exceeded its node budget");
    int f = slots[slot];
    int from = picked[f].empty() ? 0 : picked[f].back() + 1;
    for (int i = from; i < static_cast<int>(families[f].size()); ++i) {
      if (!free(families[f][i])) continue;
      mark(families[f][i], 1);
      picked[f].push_back(i);
      if (dfs(slot + 1)) return true;
      picked[f].pop_back();
      mark(families[f][i], -1);
    }
    return false;
  }
};

}  // namespace

std::vector<std::vector<int>> multi_family_select(const Graph& tree, const std::vector<std::vector<VertexSet>>& families,
                                                  const std::vector<int>& quotas, int k, std::size_t node_budget) {
  if (families.empty()) throw InputError("at least one family is required");
  if (quotas.size() != families.size()) throw InputError("one quota per family is required");
  int total = 0;
  for (int q : quotas) {
    if (q < 0) throw InputError("negative quota");
    total += q;
  }
  if (total > k) throw InputError("quotas sum to " + std::to_string(total) + ", above the certified k = " + std::to_string(k));
  for (std::size_t i = 0; i < families.size(); ++i)
    if (!tree_helly(tree, families[i], k).packing)
      throw PreconditionError("disjoint-members", "family " + std::to_string(i) + " lacks " + std::to_string(k) +
                                                      " pairwise disjoint members");
  SelectSearch search{families, {}, std::vector<std::vector<int>>(families.size()),
                      std::vector<int>(static_cast<std::size_t>(tree.vertex_count()), 0), node_budget};
  for (std::size_t i = 0; i < families.size(); ++i) search.slots.insert(search.slots.end(), quotas[i], static_cast<int>(i));
  if (!search.dfs(0))
    throw InternalInconsistency("no disjoint selection although every family holds k disjoint members");
  return search.picked;
}

std::string check_family_shape(const Graph& g, const VertexSet& host, const ExchangeableFamily& f) {
  if (f.component_count < 1) return "component count must be positive";
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    const auto& m = f.members[i];
    std::string who = "member " + std::to_string(i);
    if (static_cast<int>(m.size()) != f.component_count) return who + " does not have exactly c components";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j].empty() || !is_subset(m[j], host) || !is_connected(g, m[j]))
        return who + " component " + std::to_string(j) + " is not a connected subgraph of L";
      for (std::size_t h = j + 1; h < m.size(); ++h)
        if (intersects(m[j], m[h]) || intersects(open_neighborhood(g, m[j]), m[h]))
          return who + " components " + std::to_string(j) + " and " + std::to_string(h) + " touch";
    }
  }
  return {};
}

std::string check_exchange(const ExchangeableFamily& f, std::uint64_t seed, int samples) {
  if (f.component_count <= 1 || f.members.empty()) return {};
  std::set<std::vector<VertexSet>> known(f.members.begin(), f.members.end());
  std::mt19937_64 rng(seed);
  const int c = f.component_count;
  for (int s = 0; s < samples; ++s) {
    std::vector<VertexSet> mix;
    for (int j = 0; j < c; ++j) mix.push_back(f.members[rng() % f.members.size()][j]);
    bool disjoint = true;
    for (int a = 0; a < c && disjoint; ++a)
      for (int b = a + 1; b < c && disjoint; ++b) disjoint = !intersects(mix[a], mix[b]);
    if (disjoint && !known.count(mix)) return "recombination sample " + std::to_string(s) + " is not a member";
  }
  return {};
}

namespace {

CenteredSet certify_bag(const Graph& g, const EasyTreeInput& in, std::size_t t, const Caps& caps) {
  const VertexSet& bag = in.td.bags[t];
  if (t < in.bag_certificates.size()) {
    const auto& c = in.bag_certificates[t];
    if (c.z == bag && verify_centered(g, c) && static_cast<int>(c.centers.size()) <= in.xi && within(c.radius, in.eta))
      return c;
  }
  if (static_cast<int>(bag.size()) <= in.xi) return CenteredSet{bag, bag, 0};
  SearchMode mode = g.vertex_count() <= caps.centered_exact_vertices ? SearchMode::exact : SearchMode::greedy;
  auto res = certify_centered(g, bag, in.xi, in.eta, mode, caps);
  if (!res) throw PreconditionError("bag-centered", "bag " + std::to_string(t) + " is not (xi, eta)-centered (" + res.refusal + ")");
  return *res.certificate;
}

bool member_hit(const std::vector<VertexSet>& member, const VertexSet& z) {
  return std::any_of(member.begin(), member.end(), [&](const VertexSet& c) { return intersects(c, z); });
}

VertexSet member_union(const std::vector<VertexSet>& member) {
  VertexSet out;
  for (const auto& c : member) out = set_union(out, c);
  return out;
}

}  // namespace

EasyTreeResult easy_tree_hitting(const EasyTreeInput& in, const Caps& caps) {
  const Graph& g = in.g;
  if (in.k < 1) throw InputError("k must be positive");
  if (in.r < 0 || in.eta < 0 || in.xi < 0) throw InputError("r, xi and eta must be nonnegative");
  g.require_subset(in.l);
  const int c = in.family.component_count;

  if (!is_location(g, in.l, in.location)) throw PreconditionError("location", "separations are not a location in L");
  VertexSet core = in.l;
  for (const auto& s : in.location) core = set_intersection(core, s.b);
  if (auto check = check_decomposition(g, in.td, core); !check)
    throw PreconditionError("decomposition", check.violation);
  const int nt = in.td.tree.vertex_count();
  std::vector<int> anchor;
  for (std::size_t s = 0; s < in.location.size(); ++s) {
    VertexSet sep = in.location[s].separator();
    int t = 0;
    while (t < nt && !is_subset(sep, in.td.bags[t])) ++t;
    if (t == nt) throw PreconditionError("separator-bag", "separator of separation " + std::to_string(s) + " lies in no bag");
    anchor.push_back(t);
  }
  if (auto why = check_family_shape(g, in.l, in.family); !why.empty()) throw PreconditionError("family-shape", why);
  if (auto why = check_exchange(in.family, 0x5eed); !why.empty()) throw PreconditionError("exchange", why);

  const auto& members = in.family.members;
  for (std::size_t s = 0; s < in.location.size(); ++s) {
    const auto& sep = in.location[s];
    VertexSet deep = set_difference(sep.a, neighborhood(g, sep.separator(), in.r));
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int j = 0; j < c; ++j)
        if (is_subset(members[i][j], deep))
          throw PreconditionError("location-depth", "member " + std::to_string(i) + " component " + std::to_string(j) +
                                                        " lies inside A - N[A∩B] of separation " + std::to_string(s));
  }
  std::vector<std::vector<VertexSet>> plus(members.size());
  for (std::size_t i = 0; i < members.size(); ++i)
    for (int j = 0; j < c; ++j) {
      plus[i].push_back(set_intersection(neighborhood(g, members[i][j], in.r), in.l));
      if (!is_connected(g, plus[i][j]))
        throw PreconditionError("fattened-connectivity",
                                "member " + std::to_string(i) + " component " + std::to_string(j));
    }
  std::vector<CenteredSet> certs;
  for (int t = 0; t < nt; ++t) certs.push_back(certify_bag(g, in, t, caps));

  // T' adds a leaf t'_A with bag V(A) next to the node holding V(A∩B).
  Graph extended(nt + static_cast<int>(in.location.size()));
  for (const Edge& e : in.td.tree.edges()) extended.add_edge(e.u, e.v);
  std::vector<VertexSet> bags = in.td.bags;
  for (std::size_t s = 0; s < in.location.size(); ++s) {
    extended.add_edge(anchor[s], nt + static_cast<int>(s));
    bags.push_back(in.location[s].a);
  }
  auto to_core_node = [&](Vertex t) { return t < nt ? t : anchor[t - nt]; };

  std::vector<std::vector<VertexSet>> families(static_cast<std::size_t>(c));
  std::vector<std::vector<int>> kept(static_cast<std::size_t>(c));
  EasyTreeResult out;
  for (int j = 0; j < c; ++j) {
    auto& fam = families[j];
    for (std::size_t i = 0; i < members.size(); ++i) {
      std::vector<Vertex> nodes;
      for (std::size_t t = 0; t < bags.size(); ++t)
        if (intersects(bags[t], plus[i][j])) nodes.push_back(static_cast<Vertex>(t));
      fam.emplace_back(nodes);
    }
    auto helly = tree_helly(extended, fam, c * in.k);
    if (helly.packing) {
      kept[j] = helly.disjoint;
      std::vector<VertexSet> picked;
      for (int idx : helly.disjoint) picked.push_back(fam[idx]);
      fam = std::move(picked);
      continue;
    }
    std::vector<Vertex> nodes;
    for (Vertex t : helly.hitting) nodes.push_back(to_core_node(t));
    VertexSet hit_nodes(nodes);
    VertexSet z0, centers;
    for (Vertex t : hit_nodes) {
      z0 = set_union(z0, bags[t]);
      centers = set_union(centers, certs[t].centers);
    }
    out.hitting = CenteredSet{z0.empty() ? VertexSet{} : neighborhood(g, z0, in.r), centers, in.eta + in.r};
    out.hitting_nodes = hit_nodes.members();
    bool ok = verify_centered(g, out.hitting) &&
              static_cast<int>(centers.size()) <= (c * in.k - 1) * in.xi &&
              std::all_of(members.begin(), members.end(), [&](const auto& m) { return member_hit(m, out.hitting.z); });
    if (!ok) throw InternalInconsistency("tree hitting set failed its certificate");
    return out;
  }

  // Every index j has c k disjoint subtrees: pick k per index, all pairwise disjoint.
  auto picks = multi_family_select(extended, families, std::vector<int>(static_cast<std::size_t>(c), in.k), c * in.k);
  std::set<std::vector<VertexSet>> known(members.begin(), members.end());
  out.packing = true;
  for (int beta = 0; beta < in.k; ++beta) {
    std::vector<VertexSet> m;
    for (int alpha = 0; alpha < c; ++alpha) m.push_back(members[kept[alpha][picks[alpha][beta]]][alpha]);
    if (!known.count(m)) throw PreconditionError("exchange", "recombined member " + std::to_string(beta) + " is not in the family");
    out.members.push_back(std::move(m));
  }
  for (int a = 0; a < in.k; ++a)
    for (int b = a + 1; b < in.k; ++b)
      if (!(set_distance(g, member_union(out.members[a]), member_union(out.members[b])) > 2 * in.r + kTolerance))
        throw InternalInconsistency("packed members " + std::to_string(a) + " and " + std::to_string(b) +
                                    " are within 2r in G");
  return out;
}

}  // namespace coarse_menger
