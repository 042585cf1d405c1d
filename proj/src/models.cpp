#include "coarse_menger/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>

#include "coarse_menger/search.hpp"

namespace coarse_menger {

namespace {

using Mask = std::uint64_t;

void validate_pattern(const Graph& g, const RootedPattern& p) {
  if (p.pattern.vertex_count() == 0) throw InputError("pattern must have a vertex");
  if (!is_connected(p.pattern, p.pattern.vertices())) throw InputError("pattern must be connected");
  if (static_cast<int>(p.roots.size()) != p.pattern.vertex_count())
    throw InputError("one root set per pattern vertex is required");
  for (std::size_t h = 0; h < p.roots.size(); ++h) {
    g.require_subset(p.roots[h]);
    if (p.roots[h].empty()) throw InputError("root set of pattern vertex " + std::to_string(h) + " is empty");
  }
  if (p.ell < 0) throw InputError("negative fatness");
}

bool is_k2(const Graph& pattern) { return pattern.vertex_count() == 2 && pattern.edge_count() == 1; }

// Pattern vertices matched to distinct vertices of `pool`, one from each root set.
std::optional<std::vector<Vertex>> distinct_representatives(const RootedPattern& p, const VertexSet& pool) {
  const int h = p.pattern.vertex_count();
  std::vector<std::vector<Vertex>> options(static_cast<std::size_t>(h));
  for (int i = 0; i < h; ++i) options[i] = set_intersection(p.roots[i], pool).members();
  std::map<Vertex, int> owner;
  std::vector<Vertex> rep(static_cast<std::size_t>(h), -1);
  std::function<bool(int, std::vector<char>&)> augment = [&](int i, std::vector<char>& seen) {
    for (std::size_t o = 0; o < options[i].size(); ++o) {
      Vertex v = options[i][o];
      auto it = owner.find(v);
      if (it == owner.end()) {
        owner[v] = i;
        rep[i] = v;
        return true;
      }
      if (seen[it->second]) continue;
      seen[it->second] = 1;
      if (augment(it->second, seen)) {
        owner[v] = i;
        rep[i] = v;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < h; ++i) {
    std::vector<char> seen(static_cast<std::size_t>(h), 0);
    seen[i] = 1;
    if (!augment(i, seen)) return std::nullopt;
  }
  return rep;
}

FatMinorModel singleton_model(const Graph& g, const RootedPattern& p, const std::vector<Vertex>& rep,
                              const std::vector<char>& open) {
  FatMinorModel m;
  m.pattern = p.pattern;
  m.fatness = p.ell;
  m.roots = p.roots;
  for (Vertex v : rep) m.branch_sets.push_back(VertexSet{v});
  for (const Edge& e : p.pattern.edges()) m.edge_paths.push_back(make_path(g, shortest_hop_path(g, rep[e.u], rep[e.v], open)));
  return m;
}

std::optional<FatMinorModel> k2_model(const Graph& g, const RootedPattern& p, const VertexSet& allowed) {
  auto open = allowed.mask(g.vertex_count());
  std::vector<Vertex> best;
  for (Vertex a : p.roots[0]) {
    if (!open[a]) continue;
    auto hops = shortest_distances(g, {a}, open);
    for (Vertex b : p.roots[1]) {
      if (b == a || !open[b] || hops[b] == kInfinity || !at_least(g.distance(a, b), p.ell)) continue;
      auto path = shortest_hop_path(g, a, b, open);
      if (best.empty() || path.size() < best.size()) best = std::move(path);
    }
  }
  if (best.empty()) return std::nullopt;
  FatMinorModel m;
  m.pattern = p.pattern;
  m.fatness = p.ell;
  m.roots = p.roots;
  m.branch_sets = {VertexSet{best.front()}, VertexSet{best.back()}};
  m.edge_paths = {make_path(g, best)};
  if (p.pattern.edges()[0].u != 0) std::swap(m.branch_sets[0], m.branch_sets[1]);
  return m;
}

// Exhaustive search over connected branch sets and simple edge paths inside `allowed`.
struct BruteModelSearch {
  const Graph& g;
  const RootedPattern& p;
  std::vector<Vertex> local;  // local index -> host vertex
  std::vector<Mask> connected_sets;
  std::vector<std::vector<Vertex>> paths;  // host sequences with at least two vertices
  std::vector<Mask> path_masks;
  std::vector<Mask> root_masks;
  std::vector<std::vector<double>> dist;  // local all-pairs in g
  std::vector<Mask> branch;
  std::vector<int> edge_path;
  std::size_t budget;
  std::size_t nodes = 0;

  double mask_distance(Mask a, Mask b) const {
    double best = kInfinity;
    for (Mask x = a; x; x &= x - 1)
      for (Mask y = b; y; y &= y - 1) best = std::min(best, dist[std::countr_zero(x)][std::countr_zero(y)]);
    return best;
  }
  void tick() {
    if (++nodes > budget) throw CapacityError("fat-model search exceeded its node budget");
  }
  bool place_edges(std::size_t e) {
    const auto& edges = p.pattern.edges();
    if (e == edges.size()) return true;
    Mask su = branch[edges[e].u], sv = branch[edges[e].v];
    for (std::size_t i = 0; i < paths.size(); ++i) {
      tick();
      Mask front = Mask{1} << index_of(paths[i].front()), back = Mask{1} << index_of(paths[i].back());
      if (!(((front & su) && (back & sv)) || ((front & sv) && (back & su)))) continue;
      bool ok = true;
      for (int h = 0; h < p.pattern.vertex_count() && ok; ++h)
        if (h != edges[e].u && h != edges[e].v) ok = at_least(mask_distance(path_masks[i], branch[h]), p.ell);
      for (std::size_t f = 0; f < e && ok; ++f) ok = at_least(mask_distance(path_masks[i], path_masks[edge_path[f]]), p.ell);
      if (!ok) continue;
      edge_path[e] = static_cast<int>(i);
      if (place_edges(e + 1)) return true;
    }
    return false;
  }
  bool place_branch(int h, Mask used) {
    if (h == p.pattern.vertex_count()) return place_edges(0);
    for (Mask s : connected_sets) {
      tick();
      if ((s & used) || !(s & root_masks[h])) continue;
      bool ok = true;
      for (int q = 0; q < h && ok; ++q) ok = at_least(mask_distance(s, branch[q]), p.ell);
      if (!ok) continue;
      branch[h] = s;
      if (place_branch(h + 1, used | s)) return true;
    }
    return false;
  }
  int index_of(Vertex v) const {
    return static_cast<int>(std::lower_bound(local.begin(), local.end(), v) - local.begin());
  }
  VertexSet to_set(Mask m) const {
    std::vector<Vertex> out;
    for (; m; m &= m - 1) out.push_back(local[std::countr_zero(m)]);
    return VertexSet(out);
  }
};

std::optional<FatMinorModel> brute_model(const Graph& g, const RootedPattern& p, const VertexSet& allowed,
                                         const Caps& caps) {
  const int m = static_cast<int>(allowed.size());
  if (m > caps.model_vertices)
    throw CapacityError("exhaustive fat-model search is capped at " + std::to_string(caps.model_vertices) + " vertices");
  BruteModelSearch s{g, p, allowed.members()};
  s.budget = caps.search_nodes;
  s.dist.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s.dist[i][j] = g.distance(s.local[i], s.local[j]);
  Graph local(m);
  for (const Edge& e : g.edges())
    if (allowed.contains(e.u) && allowed.contains(e.v)) local.add_edge(s.index_of(e.u), s.index_of(e.v));
  for (Mask sub = 1; sub < (Mask{1} << m); ++sub) {
    std::vector<Vertex> members;
    for (Mask x = sub; x; x &= x - 1) members.push_back(std::countr_zero(x));
    if (is_connected(local, VertexSet(members))) s.connected_sets.push_back(sub);
  }
  std::sort(s.connected_sets.begin(), s.connected_sets.end(),
            [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b) || (std::popcount(a) == std::popcount(b) && a < b); });
  for (const auto& r : p.roots) {
    Mask rm = 0;
    for (Vertex v : r)
      if (allowed.contains(v)) rm |= Mask{1} << s.index_of(v);
    s.root_masks.push_back(rm);
  }
  if (p.pattern.edge_count() > 0) {
    PathSearch spec;
    spec.accept = [](Vertex a, Vertex b) { return a != b; };
    bool truncated = false;
    auto seqs = search_paths(local, spec, caps.max_paths, caps.search_nodes, truncated);
    if (truncated) throw CapacityError("fat-model search found too many candidate paths");
    std::sort(seqs.begin(), seqs.end(), [](const auto& a, const auto& b) { return a.size() < b.size() || (a.size() == b.size() && a < b); });
    for (auto& q : seqs) {
      Mask pm = 0;
      std::vector<Vertex> host;
      for (Vertex v : q) {
        pm |= Mask{1} << v;
        host.push_back(s.local[v]);
      }
      s.paths.push_back(std::move(host));
      s.path_masks.push_back(pm);
    }
  }
  s.branch.assign(static_cast<std::size_t>(p.pattern.vertex_count()), 0);
  s.edge_path.assign(static_cast<std::size_t>(p.pattern.edge_count()), -1);
  if (!s.place_branch(0, 0)) return std::nullopt;
  FatMinorModel model;
  model.pattern = p.pattern;
  model.fatness = p.ell;
  model.roots = p.roots;
  for (Mask b : s.branch) model.branch_sets.push_back(s.to_set(b));
  const auto& edges = p.pattern.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto seq = s.paths[s.edge_path[e]];
    if (!model.branch_sets[edges[e].u].contains(seq.front())) std::reverse(seq.begin(), seq.end());
    model.edge_paths.push_back(make_path(g, seq));
  }
  return model;
}

// Fast existence test on hosts with at most 64 vertices for the polynomial cases.
class MaskOracle {
 public:
  MaskOracle(const Graph& g, const RootedPattern& p) : p_(p) {
    const int n = g.vertex_count();
    adj_.assign(static_cast<std::size_t>(n), 0);
    for (const Edge& e : g.edges()) {
      adj_[e.u] |= Mask{1} << e.v;
      adj_[e.v] |= Mask{1} << e.u;
    }
    for (const auto& r : p.roots) {
      Mask m = 0;
      for (Vertex v : r) m |= Mask{1} << v;
      roots_.push_back(m);
    }
    if (p.ell > 0) {
      far_.assign(static_cast<std::size_t>(n), 0);
      for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b)
          if (at_least(g.distance(a, b), p.ell)) far_[a] |= Mask{1} << b;
    }
  }

  static bool supports(const Graph& g, const RootedPattern& p) {
    return g.vertex_count() <= 64 && (p.ell <= 0 || is_k2(p.pattern));
  }

  bool exists(Mask allowed) const {
    Mask left = allowed;
    while (left) {
      Mask comp = component(left, std::countr_zero(left));
      left &= ~comp;
      if (p_.ell > 0 ? k2_fits(comp) : sdr_fits(comp)) return true;
    }
    return false;
  }

 private:
  Mask component(Mask allowed, int start) const {
    Mask seen = Mask{1} << start, frontier = seen;
    while (frontier) {
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= adj_[std::countr_zero(f)];
      next &= allowed & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen;
  }
  bool k2_fits(Mask comp) const {
    for (Mask a = comp & roots_[0]; a; a &= a - 1)
      if (far_[std::countr_zero(a)] & comp & roots_[1]) return true;
    return false;
  }
  bool sdr_fits(Mask comp) const {
    const int h = static_cast<int>(roots_.size());
    std::vector<int> owner(64, -1);
    std::function<bool(int, Mask&)> augment = [&](int i, Mask& seen) {
      for (Mask o = roots_[i] & comp & ~seen; o; o &= o - 1) {
        int v = std::countr_zero(o);
        seen |= Mask{1} << v;
        if (owner[v] < 0 || augment(owner[v], seen)) {
          owner[v] = i;
          return true;
        }
      }
      return false;
    };
    for (int i = 0; i < h; ++i) {
      Mask seen = 0;
      if (!augment(i, seen)) return false;
    }
    return true;
  }

  const RootedPattern& p_;
  std::vector<Mask> adj_;
  std::vector<Mask> roots_;
  std::vector<Mask> far_;
};

Mask to_mask(const VertexSet& s) {
  Mask m = 0;
  for (Vertex v : s) m |= Mask{1} << v;
  return m;
}

VertexSet from_mask64(Mask m) {
  std::vector<Vertex> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return VertexSet(out);
}

}  // namespace

std::optional<FatMinorModel> find_rooted_model(const Graph& g, const RootedPattern& p, const VertexSet& allowed,
                                               const Caps& caps) {
  validate_pattern(g, p);
  g.require_subset(allowed);
  std::optional<FatMinorModel> found;
  if (p.ell <= 0) {
    auto open = allowed.mask(g.vertex_count());
    for (const auto& comp : components(g, allowed))
      if (auto rep = distinct_representatives(p, comp)) {
        found = singleton_model(g, p, *rep, open);
        break;
      }
  } else if (is_k2(p.pattern)) {
    found = k2_model(g, p, allowed);
  } else {
    found = brute_model(g, p, allowed, caps);
  }
  if (found && !check_fat_minor(g, *found)) throw InternalInconsistency("constructed model fails its own check");
  return found;
}

bool has_disjoint_rooted_models(const Graph& g, const RootedPattern& p, const Caps& caps) {
  validate_pattern(g, p);
  const int n = g.vertex_count();
  if (n > caps.connected_set_vertices)
    throw CapacityError("connected-set enumeration is capped at " + std::to_string(caps.connected_set_vertices) + " vertices");
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::optional<MaskOracle> fast;
  if (MaskOracle::supports(g, p)) fast.emplace(g, p);
  auto has_model = [&](Mask m) { return fast ? fast->exists(m) : find_rooted_model(g, p, from_mask64(m), caps).has_value(); };
  std::vector<Mask> adj(static_cast<std::size_t>(n), 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= Mask{1} << e.v;
    adj[e.v] |= Mask{1} << e.u;
  }
  std::size_t nodes = 0;
  // Connected sets grown from their smallest vertex (each set visited once). A set whose
  // complement holds no model has no useful superset, so that branch is cut.
  std::function<bool(Mask, Mask, Mask, int)> grow = [&](Mask set, Mask border, Mask ext, int root) {
    if (++nodes > caps.search_nodes) throw CapacityError("connected-set enumeration exceeded its node budget");
    if (!has_model(all & ~set)) return false;
    if (has_model(set)) return true;
    Mask above = all & ~((Mask{2} << root) - 1);
    while (ext) {
      int w = std::countr_zero(ext);
      ext &= ext - 1;
      Mask fresh = adj[w] & ~set & ~border & above;
      if (grow(set | (Mask{1} << w), border | adj[w], ext | fresh, root)) return true;
    }
    return false;
  };
  for (int v = 0; v < n; ++v) {
    Mask above = all & ~((Mask{2} << v) - 1);
    if (grow(Mask{1} << v, adj[v] | (Mask{1} << v), adj[v] & above, v)) return true;
  }
  return false;
}

namespace {

class ModelFamily : public ImplicitFamily {
 public:
  ModelFamily(const Graph& g, const RootedPattern& p, const Caps& caps) : g_(g), p_(p), caps_(caps) {
    if (MaskOracle::supports(g, p)) fast_.emplace(g, p);
  }

  bool exists(const VertexSet& allowed) const {
    if (fast_) return fast_->exists(to_mask(allowed));
    return find_rooted_model(g_, p_, allowed, caps_).has_value();
  }

  // A vertex-minimal set still holding a model, shrunk in vertex order from a witness.
  std::optional<VertexSet> unhit_member(const std::vector<char>& blocked) const override {
    std::vector<char> open(blocked.size());
    for (std::size_t v = 0; v < blocked.size(); ++v) open[v] = !blocked[v];
    auto model = find_rooted_model(g_, p_, VertexSet::from_mask(open), caps_);
    if (!model) return std::nullopt;
    VertexSet set = model_union(*model);
    for (Vertex v : set.members()) {
      VertexSet smaller = set_difference(set, VertexSet{v});
      if (exists(smaller)) set = smaller;
    }
    return set;
  }

  std::size_t residual(const std::vector<char>& blocked) const override {
    std::vector<char> open(blocked.size());
    for (std::size_t v = 0; v < blocked.size(); ++v) open[v] = !blocked[v];
    std::size_t count = 0;
    for (const auto& comp : components(g_, VertexSet::from_mask(open)))
      if (exists(comp)) count += comp.size();
    return count;
  }

 private:
  const Graph& g_;
  const RootedPattern& p_;
  const Caps& caps_;
  std::optional<MaskOracle> fast_;
};

}  // namespace

VertexSet min_model_hitting_set(const Graph& g, const RootedPattern& p, const Caps& caps) {
  validate_pattern(g, p);
  ModelFamily family(g, p, caps);
  return exact_ball_cover(g, 0, family, caps.search_nodes).centers;
}

RootedEpResult rooted_fat_minor_ep(const Graph& g, const TreeDecomposition& td, const RootedPattern& p, int k, double r,
                                   const Caps& caps) {
  validate_pattern(g, p);
  if (g.is_weighted()) throw InputError("rooted fat-minor hitting supports unweighted hosts only");
  if (k < 1) throw InputError("k must be positive");
  if (r < 0) throw InputError("negative distance threshold");
  if (auto check = check_decomposition(g, td); !check) throw PreconditionError("decomposition", check.violation);
  const int n = g.vertex_count();

  RootedEpResult out;
  out.bag_size = td.width() + 1;
  const double fatten = p.ell > 0 ? std::max(std::ceil(p.ell / 2 - kTolerance) - 1, 0.0) : 0.0;
  // Integer translation keeping 2(r'' + a) + 1 >= r; equals ceil((r-1)/2) - ell/2 for ell = 0.
  const double translated = std::max(std::ceil((r - 1) / 2 - kTolerance) - fatten, 0.0);
  const double reach = translated + fatten;
  out.fattening_radius = fatten;
  out.translated_radius = translated;
  ModelFamily family(g, p, caps);

  auto finish_hitting = [&](const VertexSet& core, const VertexSet& centers) {
    out.packing = false;
    out.hitting = CenteredSet{core.empty() ? VertexSet{} : neighborhood(g, core, reach), centers, reach};
    bool ok = verify_centered(g, out.hitting) &&
              static_cast<int>(centers.size()) <= (k - 1) * out.bag_size &&
              !family.exists(set_difference(g.vertices(), out.hitting.z));
    if (!ok) throw InternalInconsistency("rooted-model hitting set failed its certificate");
  };
  auto finish_packing = [&] {
    out.packing = true;
    for (std::size_t i = 0; i < out.models.size(); ++i) {
      if (!check_fat_minor(g, out.models[i])) throw InternalInconsistency("packed model fails its check");
      for (std::size_t j = i + 1; j < out.models.size(); ++j)
        if (!at_least(model_distance(g, out.models[i], out.models[j]), r))
          throw InternalInconsistency("packed models are closer than r");
    }
  };

  if (n <= caps.model_vertices) {
    out.route = "explicit";
    // Vertex-minimal connected sets holding a model are exactly the minimal model unions.
    std::vector<VertexSet> minimal;
    for (Mask sub = 1; n > 0 && sub < (Mask{1} << n); ++sub) {
      VertexSet s = from_mask64(sub);
      if (!is_connected(g, s) || !family.exists(s)) continue;
      bool is_min = std::none_of(s.begin(), s.end(), [&](Vertex v) { return family.exists(set_difference(s, VertexSet{v})); });
      if (is_min) minimal.push_back(s);
    }
    EasyTreeInput in;
    in.g = g;
    in.l = g.vertices();
    in.location = {Separation{VertexSet{}, g.vertices()}};
    in.td = td;
    in.r = translated;
    in.k = k;
    in.xi = out.bag_size;
    in.eta = 0;
    std::map<VertexSet, VertexSet> origin;
    for (const auto& s : minimal) {
      VertexSet fat = neighborhood(g, s, fatten);
      if (origin.emplace(fat, s).second) in.family.members.push_back({fat});
    }
    for (const auto& bag : td.bags) in.bag_certificates.push_back(CenteredSet{bag, bag, 0});
    auto res = easy_tree_hitting(in, caps);
    if (res.packing) {
      for (const auto& m : res.members) out.models.push_back(*find_rooted_model(g, p, origin.at(m[0]), caps));
      finish_packing();
    } else {
      VertexSet core;
      for (int t : res.hitting_nodes) core = set_union(core, td.bags[t]);
      finish_hitting(core, res.hitting.centers);
    }
    return out;
  }

  if (!(p.ell <= 0 || is_k2(p.pattern)))
    throw CapacityError("hosts above " + std::to_string(caps.model_vertices) +
                        " vertices need ell = 0 or a K2 pattern");
  out.route = "implicit";
  const int nt = td.tree.vertex_count();
  auto depth = shortest_distances(td.tree, {0});
  std::vector<int> parent(static_cast<std::size_t>(nt), -1);
  for (int t = 1; t < nt; ++t)
    for (const Arc& a : td.tree.neighbors(t))
      if (depth[a.to] < depth[t]) parent[t] = a.to;
  std::vector<int> order(static_cast<std::size_t>(nt));
  for (int t = 0; t < nt; ++t) order[t] = t;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b] || (depth[a] == depth[b] && a < b); });
  auto below = [&](int t, int anc) {
    for (int x = t; x >= 0; x = parent[x])
      if (x == anc) return true;
    return false;
  };
  // Helly greedy over the subtrees T_S = {t : bag t meets N≤reach[S]}: a model whose
  // subtree has its top at t avoids the reach-ball of every bag outside t's subtree.
  VertexSet chosen_bags;
  std::vector<int> tops;
  while (true) {
    bool found = false;
    for (int t : order) {
      VertexSet outside = chosen_bags;
      for (int s = 0; s < nt; ++s)
        if (!below(s, t)) outside = set_union(outside, td.bags[s]);
      VertexSet allowed = outside.empty() ? g.vertices() : set_difference(g.vertices(), neighborhood(g, outside, reach));
      if (!family.exists(allowed)) continue;
      out.models.push_back(*find_rooted_model(g, p, allowed, caps));
      tops.push_back(t);
      chosen_bags = set_union(chosen_bags, td.bags[t]);
      found = true;
      break;
    }
    if (!found || static_cast<int>(out.models.size()) >= k) break;
  }
  if (static_cast<int>(out.models.size()) >= k) {
    finish_packing();
  } else {
    out.models.clear();
    finish_hitting(chosen_bags, chosen_bags);
  }
  return out;
}

}  // namespace coarse_menger
