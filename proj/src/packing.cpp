#include "coarse_menger/packing.hpp"

#include <algorithm>
#include <numeric>

#include "coarse_menger/search.hpp"

namespace coarse_menger {

double min_pairwise_distance(const Graph& g, const std::vector<PathWitness>& paths) {
  double best = kInfinity;
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = i + 1; j < paths.size(); ++j)
      best = std::min(best, set_distance(g, paths[i].vertex_set(), paths[j].vertex_set()));
  return best;
}

bool verify_packing(const Graph& g, const std::vector<PathWitness>& paths, double ell, const VertexSet& x,
                    const VertexSet& y, double r) {
  for (const auto& p : paths)
    if (!is_lxy_path(g, p, ell, x, y)) return false;
  return at_least(min_pairwise_distance(g, paths), r);
}

namespace {

bool eligible(const Graph& g, const VertexSet& x, const VertexSet& y, double ell, Vertex s, Vertex t) {
  bool ends = (x.contains(s) && y.contains(t)) || (y.contains(s) && x.contains(t));
  return ends && at_least(g.distance(s, t), ell);
}

std::vector<int> hop_counts(const Graph& g, const std::vector<Vertex>& sources, const std::vector<char>& allowed) {
  std::vector<int> hops(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<Vertex> queue;
  for (Vertex s : sources)
    if (allowed[s] && hops[s] < 0) {
      hops[s] = 0;
      queue.push_back(s);
    }
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const Arc& a : g.neighbors(queue[i]))
      if (allowed[a.to] && hops[a.to] < 0) {
        hops[a.to] = hops[queue[i]] + 1;
        queue.push_back(a.to);
      }
  return hops;
}

// Among eligible paths inside `allowed` with the fewest edges, the lexicographically
// least vertex sequence over both orientations. Empty when none exists.
std::vector<Vertex> least_short_path(const Graph& g, const VertexSet& x, const VertexSet& y, double ell,
                                     const std::vector<char>& allowed) {
  int best_hops = -1;
  Vertex best_start = -1;
  for (Vertex s : set_union(x, y)) {
    if (!allowed[s]) continue;
    auto hops = hop_counts(g, {s}, allowed);
    for (Vertex t = 0; t < g.vertex_count(); ++t) {
      if (hops[t] < 0 || !eligible(g, x, y, ell, s, t)) continue;
      if (best_hops < 0 || hops[t] < best_hops) {
        best_hops = hops[t];
        best_start = s;
      }
    }
  }
  if (best_hops < 0) return {};
  auto from_start = hop_counts(g, {best_start}, allowed);
  std::vector<Vertex> targets;
  for (Vertex t = 0; t < g.vertex_count(); ++t)
    if (from_start[t] == best_hops && eligible(g, x, y, ell, best_start, t)) targets.push_back(t);
  auto to_target = hop_counts(g, targets, allowed);
  std::vector<Vertex> path{best_start};
  while (to_target[path.back()] > 0) {
    Vertex cur = path.back();
    for (const Arc& a : g.neighbors(cur))
      if (allowed[a.to] && to_target[a.to] == to_target[cur] - 1) {
        path.push_back(a.to);
        break;
      }
  }
  return path;
}

PathWitness witness(const Graph& g, std::vector<Vertex> seq) {
  PathWitness p;
  p.endpoint_distance = g.distance(seq.front(), seq.back());
  p.sequence = std::move(seq);
  return canonical(std::move(p));
}

void sort_paths(std::vector<PathWitness>& paths) {
  std::sort(paths.begin(), paths.end(), [](const PathWitness& a, const PathWitness& b) { return a.sequence < b.sequence; });
}

std::vector<PathWitness> greedy_packing(const Graph& g, const VertexSet& x, const VertexSet& y, double ell, double r) {
  const int n = g.vertex_count();
  std::vector<char> allowed(static_cast<std::size_t>(n), 1);
  std::vector<PathWitness> chosen;
  while (true) {
    auto seq = least_short_path(g, x, y, ell, allowed);
    if (seq.empty()) break;
    auto d = distance_to_set(g, VertexSet(seq));
    for (Vertex v = 0; v < n; ++v)
      if (!at_least(d[v], r)) allowed[v] = 0;
    chosen.push_back(witness(g, std::move(seq)));
  }
  sort_paths(chosen);
  return chosen;
}

// Largest subset of `s` pairwise at distance >= r, or |s| when the search is cut short.
std::size_t far_subset_bound(const Graph& g, const VertexSet& s, double r) {
  std::vector<Bits> conflicts(s.size(), Bits(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!at_least(g.distance(s[i], s[j]), r)) {
        conflicts[i].set(j);
        conflicts[j].set(i);
      }
  auto mis = maximum_independent_set(conflicts, s.size(), 200000);
  return mis.optimal ? mis.members.size() : s.size();
}

}  // namespace

PackingSolution max_far_packing(const Graph& g, const VertexSet& x, const VertexSet& y, double ell, double r,
                                SearchMode mode, const Caps& caps) {
  g.require_subset(x);
  g.require_subset(y);
  if (!(r > 0)) throw InputError("packing threshold r must be positive");
  if (ell < 0) throw InputError("endpoint threshold ell must be nonnegative");
  PackingSolution out;
  out.paths = greedy_packing(g, x, y, ell, r);
  out.stats.method = "greedy";
  out.stats.lower_bound = out.paths.size();
  if (mode == SearchMode::greedy) {
    out.certified_min_pairwise_distance = min_pairwise_distance(g, out.paths);
    return out;
  }

  std::size_t upper = std::min({far_subset_bound(g, x, r), far_subset_bound(g, y, r),
                                static_cast<std::size_t>(menger_packing(g, x, y))});
  out.stats.upper_bound = upper;
  if (out.paths.size() >= upper) {
    out.optimal = true;
    out.stats.method = "bounds";
    out.certified_min_pairwise_distance = min_pairwise_distance(g, out.paths);
    return out;
  }
  const int n = g.vertex_count();
  if (n > caps.path_enumeration_vertices)
    throw CapacityError("exact packing needs path enumeration, capped at " +
                        std::to_string(caps.path_enumeration_vertices) + " vertices");

  // Replacing a path by a path on a subset of its vertices keeps it eligible and
  // cannot bring it closer to others, so chordless and vertex-minimal candidates suffice.
  PathSearch spec;
  spec.start_ok = [&](Vertex s) { return x.contains(s) || y.contains(s); };
  spec.accept = [&](Vertex s, Vertex t) { return eligible(g, x, y, ell, s, t); };
  spec.induced_only = true;
  if (ell <= 0) spec.interior_forbidden = set_union(x, y).mask(n);
  bool truncated = false;
  auto seqs = search_paths(g, spec, caps.max_paths, caps.search_nodes, truncated);
  if (truncated) throw CapacityError("candidate paths exceed " + std::to_string(caps.max_paths));

  std::vector<Bits> members;
  for (const auto& s : seqs) {
    Bits b(static_cast<std::size_t>(n));
    for (Vertex v : s) b.set(v);
    members.push_back(std::move(b));
  }
  std::vector<std::size_t> order(seqs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return seqs[a].size() < seqs[b].size(); });
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    bool dominated = false;
    if (order.size() <= 20000)
      for (std::size_t j : kept)
        if (seqs[j].size() < seqs[i].size() && members[j].is_subset_of(members[i])) {
          dominated = true;
          break;
        }
    if (!dominated) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());
  out.stats.candidate_paths = kept.size();

  std::vector<Bits> near;
  for (std::size_t i : kept) {
    auto d = distance_to_set(g, VertexSet(seqs[i]));
    Bits b(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v)
      if (!at_least(d[v], r)) b.set(v);
    near.push_back(std::move(b));
  }
  std::vector<Bits> conflicts(kept.size(), Bits(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = i + 1; j < kept.size(); ++j)
      if (near[i].intersects(members[kept[j]])) {
        conflicts[i].set(j);
        conflicts[j].set(i);
      }
  auto mis = maximum_independent_set(conflicts, upper, caps.search_nodes);
  out.stats.nodes = mis.nodes;
  if (!mis.optimal) throw CapacityError("packing independent-set search exceeded its node budget");
  if (mis.members.size() < out.paths.size())
    throw InternalInconsistency("exact packing smaller than a greedy packing");
  out.paths.clear();
  for (int i : mis.members) out.paths.push_back(witness(g, seqs[kept[i]]));
  sort_paths(out.paths);
  out.optimal = true;
  out.stats.method = "independent-set";
  out.certified_min_pairwise_distance = min_pairwise_distance(g, out.paths);
  return out;
}

PackingSolution max_far_packing(const PackingInstance& inst, const Caps& caps) {
  return max_far_packing(inst.host, inst.x, inst.y, inst.ell, inst.r, inst.mode, caps);
}

namespace {

// Unit-capacity flow network with split vertices: v_in = 2v, v_out = 2v + 1.
struct SplitFlow {
  struct Link {
    int to;
    int cap;
    int rev;
    bool forward;
  };
  std::vector<std::vector<Link>> adj;
  int source = 0;
  int sink = 0;

  void link(int u, int v, int cap) {
    adj[u].push_back({v, cap, static_cast<int>(adj[v].size()), true});
    adj[v].push_back({u, 0, static_cast<int>(adj[u].size()) - 1, false});
  }

  SplitFlow(const Graph& g, const VertexSet& x, const VertexSet& y) {
    const int n = g.vertex_count();
    adj.resize(static_cast<std::size_t>(2 * n + 2));
    source = 2 * n;
    sink = 2 * n + 1;
    for (Vertex v = 0; v < n; ++v) link(2 * v, 2 * v + 1, 1);
    for (const Edge& e : g.edges()) {
      link(2 * e.u + 1, 2 * e.v, 1);
      link(2 * e.v + 1, 2 * e.u, 1);
    }
    for (Vertex v : x) link(source, 2 * v, 1);
    for (Vertex v : y) link(2 * v + 1, sink, 1);
  }

  bool augment() {
    std::vector<std::pair<int, int>> parent(adj.size(), {-1, -1});
    std::vector<int> queue{source};
    parent[source] = {source, -1};
    for (std::size_t i = 0; i < queue.size() && parent[sink].first < 0; ++i) {
      int u = queue[i];
      for (int k = 0; k < static_cast<int>(adj[u].size()); ++k) {
        const Link& l = adj[u][k];
        if (l.cap > 0 && parent[l.to].first < 0) {
          parent[l.to] = {u, k};
          queue.push_back(l.to);
        }
      }
    }
    if (parent[sink].first < 0) return false;
    for (int v = sink; v != source;) {
      auto [u, k] = parent[v];
      Link& l = adj[u][k];
      l.cap -= 1;
      adj[v][l.rev].cap += 1;
      v = u;
    }
    return true;
  }

  int run() {
    int flow = 0;
    while (augment()) ++flow;
    return flow;
  }
};

}  // namespace

int menger_packing(const Graph& g, const VertexSet& x, const VertexSet& y) {
  g.require_subset(x);
  g.require_subset(y);
  SplitFlow f(g, x, y);
  return f.run();
}

std::vector<PathWitness> menger_paths(const Graph& g, const VertexSet& x, const VertexSet& y) {
  g.require_subset(x);
  g.require_subset(y);
  SplitFlow f(g, x, y);
  int flow = f.run();
  std::vector<PathWitness> out;
  // Unit capacities: a forward link carries flow exactly when it is saturated. Each walk
  // consumes what it follows, and any cycle it closes is cut out of the sequence.
  for (int p = 0; p < flow; ++p) {
    std::vector<Vertex> seq;
    int node = f.source;
    while (node != f.sink) {
      auto hop = std::find_if(f.adj[node].begin(), f.adj[node].end(),
                              [](const SplitFlow::Link& l) { return l.forward && l.cap == 0; });
      if (hop == f.adj[node].end()) throw InternalInconsistency("flow decomposition stalled");
      hop->cap = 1;
      node = hop->to;
      if (node == f.sink || node % 2 == 1) continue;
      Vertex v = node / 2;
      auto seen = std::find(seq.begin(), seq.end(), v);
      if (seen != seq.end()) seq.erase(seen, seq.end());
      seq.push_back(v);
    }
    out.push_back(make_path(g, seq));
  }
  return out;
}

GallaiPacking gallai_packing(const Graph& g, const VertexSet& a, const Caps& caps) {
  g.require_subset(a);
  const int n = g.vertex_count();
  if (n > caps.gallai_vertices)
    throw CapacityError("exhaustive A-path packing is capped at " + std::to_string(caps.gallai_vertices) + " vertices");
  // Every A-path contains a chordless A-path whose interior avoids A.
  PathSearch spec;
  spec.start_ok = [&](Vertex s) { return a.contains(s); };
  spec.accept = [&](Vertex s, Vertex t) { return s != t && a.contains(t); };
  spec.induced_only = true;
  spec.interior_forbidden = a.mask(n);
  bool truncated = false;
  auto seqs = search_paths(g, spec, caps.max_paths, caps.search_nodes, truncated);
  if (truncated) throw CapacityError("candidate A-paths exceed " + std::to_string(caps.max_paths));
  std::vector<Bits> members;
  for (const auto& s : seqs) {
    Bits b(static_cast<std::size_t>(n));
    for (Vertex v : s) b.set(v);
    members.push_back(std::move(b));
  }
  std::vector<Bits> conflicts(seqs.size(), Bits(seqs.size()));
  for (std::size_t i = 0; i < seqs.size(); ++i)
    for (std::size_t j = i + 1; j < seqs.size(); ++j)
      if (members[i].intersects(members[j])) {
        conflicts[i].set(j);
        conflicts[j].set(i);
      }
  auto mis = maximum_independent_set(conflicts, a.size() / 2, caps.search_nodes);
  if (!mis.optimal) throw CapacityError("A-path packing search exceeded its node budget");
  GallaiPacking out;
  for (int i : mis.members) out.paths.push_back(witness(g, seqs[i]));
  sort_paths(out.paths);
  return out;
}

}  // namespace coarse_menger
