#include "coarse_menger/paths.hpp"

#include <algorithm>

namespace coarse_menger {

bool is_simple_path(const Graph& g, const std::vector<Vertex>& sequence) {
  if (sequence.empty()) return false;
  std::vector<Vertex> sorted = sequence;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (Vertex v : sequence)
    if (!g.has_vertex(v)) return false;
  for (std::size_t i = 0; i + 1 < sequence.size(); ++i)
    if (!g.adjacent(sequence[i], sequence[i + 1])) return false;
  return true;
}

PathWitness make_path(const Graph& g, std::vector<Vertex> sequence) {
  if (!is_simple_path(g, sequence)) throw InputError("sequence is not a simple path of the graph");
  PathWitness p;
  p.endpoint_distance = g.distance(sequence.front(), sequence.back());
  p.sequence = std::move(sequence);
  return p;
}

PathWitness canonical(PathWitness p) {
  std::vector<Vertex> rev(p.sequence.rbegin(), p.sequence.rend());
  if (rev < p.sequence) p.sequence = std::move(rev);
  return p;
}

double path_length(const Graph& g, const PathWitness& p) {
  double total = 0;
  for (std::size_t i = 0; i + 1 < p.sequence.size(); ++i) total += g.edge_weight(p.sequence[i], p.sequence[i + 1]);
  return total;
}

bool is_lxy_path(const Graph& g, const PathWitness& p, double ell, const VertexSet& x, const VertexSet& y) {
  if (!is_simple_path(g, p.sequence)) return false;
  Vertex a = p.end_a();
  Vertex b = p.end_b();
  bool ends = (x.contains(a) && y.contains(b)) || (x.contains(b) && y.contains(a));
  return ends && at_least(g.distance(a, b), ell);
}

bool is_a_path(const Graph& g, const PathWitness& p, const VertexSet& a) {
  if (!is_simple_path(g, p.sequence)) return false;
  return p.end_a() != p.end_b() && a.contains(p.end_a()) && a.contains(p.end_b());
}

namespace {

struct PathWalker {
  const Graph& g;
  const PathSearch& spec;
  std::size_t limit;
  std::size_t budget;
  std::size_t nodes = 0;
  bool stop = false;
  bool truncated = false;
  Vertex start = 0;
  double length = 0;
  std::vector<Vertex> seq;
  std::vector<char> on_path;
  std::vector<int> touching;  // path vertices adjacent to each vertex
  std::vector<std::vector<Vertex>> out;

  void push(Vertex v, double w) {
    seq.push_back(v);
    on_path[v] = 1;
    length += w;
    for (const Arc& a : g.neighbors(v)) ++touching[a.to];
  }
  void pop(double w) {
    Vertex v = seq.back();
    for (const Arc& a : g.neighbors(v)) --touching[a.to];
    on_path[v] = 0;
    length -= w;
    seq.pop_back();
  }
  void visit() {
    if (++nodes > budget) throw CapacityError("path search exceeded its node budget");
    Vertex last = seq.back();
    if (last >= start && spec.accept(start, last)) {
      if (out.size() >= limit) {
        truncated = stop = true;
        return;
      }
      out.push_back(seq);
    }
    if (seq.size() > 1 && !spec.interior_forbidden.empty() && spec.interior_forbidden[last]) return;
    if (spec.extend_ok && !spec.extend_ok(seq, length)) return;
    for (const Arc& a : g.neighbors(last)) {
      if (on_path[a.to]) continue;
      if (spec.induced_only && touching[a.to] != 1) continue;
      push(a.to, a.weight);
      visit();
      pop(a.weight);
      if (stop) return;
    }
  }
};

}  // namespace

std::vector<std::vector<Vertex>> search_paths(const Graph& g, const PathSearch& spec, std::size_t limit,
                                              std::size_t node_budget, bool& truncated) {
  const int n = g.vertex_count();
  PathWalker w{g, spec, limit, node_budget};
  w.on_path.assign(static_cast<std::size_t>(n), 0);
  w.touching.assign(static_cast<std::size_t>(n), 0);
  for (Vertex s = 0; s < n && !w.stop; ++s) {
    if (spec.start_ok && !spec.start_ok(s)) continue;
    w.start = s;
    w.push(s, 0);
    w.visit();
    w.pop(0);
  }
  truncated = w.truncated;
  return std::move(w.out);
}

namespace {

PathEnumeration run_enumeration(const Graph& g, const PathSearch& spec, std::optional<std::size_t> cap,
                                const Caps& caps) {
  if (!cap && g.vertex_count() > caps.path_enumeration_vertices)
    throw CapacityError("uncapped path enumeration is limited to " + std::to_string(caps.path_enumeration_vertices) +
                        " vertices");
  std::size_t limit = cap ? *cap : caps.max_paths + 1;
  PathEnumeration out;
  auto seqs = search_paths(g, spec, limit, caps.search_nodes, out.truncated);
  if (!cap && out.truncated) throw CapacityError("path enumeration exceeded " + std::to_string(caps.max_paths) + " paths");
  out.paths.reserve(seqs.size());
  for (auto& s : seqs) {
    PathWitness p;
    p.endpoint_distance = g.distance(s.front(), s.back());
    p.sequence = std::move(s);
    out.paths.push_back(std::move(p));
  }
  return out;
}

}  // namespace

PathEnumeration enumerate_paths(const Graph& g, double ell, const VertexSet& x, const VertexSet& y,
                                std::optional<std::size_t> cap, const Caps& caps) {
  g.require_subset(x);
  g.require_subset(y);
  PathSearch spec;
  spec.start_ok = [&](Vertex s) { return x.contains(s) || y.contains(s); };
  spec.accept = [&](Vertex s, Vertex t) {
    bool ends = (x.contains(s) && y.contains(t)) || (y.contains(s) && x.contains(t));
    return ends && at_least(g.distance(s, t), ell);
  };
  return run_enumeration(g, spec, cap, caps);
}

PathEnumeration enumerate_a_paths(const Graph& g, const VertexSet& a, std::optional<std::size_t> cap,
                                  const Caps& caps) {
  g.require_subset(a);
  PathSearch spec;
  spec.start_ok = [&](Vertex s) { return a.contains(s); };
  spec.accept = [&](Vertex s, Vertex t) { return s != t && a.contains(t); };
  return run_enumeration(g, spec, cap, caps);
}

VertexSet model_union(const FatMinorModel& m) {
  VertexSet out;
  for (const auto& s : m.branch_sets) out = set_union(out, s);
  for (const auto& p : m.edge_paths) out = set_union(out, p.vertex_set());
  return out;
}

double model_distance(const Graph& g, const FatMinorModel& a, const FatMinorModel& b) {
  return set_distance(g, model_union(a), model_union(b));
}

ModelCheck check_fat_minor(const Graph& g, const FatMinorModel& m) {
  ModelCheck report;
  auto fail = [&](std::string what) {
    report.valid = false;
    report.violations.push_back(std::move(what));
  };
  const int h = m.pattern.vertex_count();
  const auto& pedges = m.pattern.edges();
  if (static_cast<int>(m.branch_sets.size()) != h) throw InputError("one branch set per pattern vertex is required");
  if (m.edge_paths.size() != pedges.size()) throw InputError("one edge path per pattern edge is required");
  if (m.roots && static_cast<int>(m.roots->size()) != h) throw InputError("one root set per pattern vertex is required");
  for (const auto& s : m.branch_sets) g.require_subset(s);

  for (int i = 0; i < h; ++i) {
    if (m.branch_sets[i].empty() || !is_connected(g, m.branch_sets[i]))
      fail("connectivity: branch set " + std::to_string(i));
    for (int j = i + 1; j < h; ++j)
      if (intersects(m.branch_sets[i], m.branch_sets[j]))
        fail("disjointness: branch sets " + std::to_string(i) + " and " + std::to_string(j));
  }
  for (std::size_t e = 0; e < pedges.size(); ++e) {
    const auto& p = m.edge_paths[e];
    const auto& su = m.branch_sets[pedges[e].u];
    const auto& sv = m.branch_sets[pedges[e].v];
    bool ok = is_simple_path(g, p.sequence) &&
              ((su.contains(p.end_a()) && sv.contains(p.end_b())) || (sv.contains(p.end_a()) && su.contains(p.end_b())));
    if (!ok) fail("edge-path: pattern edge " + std::to_string(e));
  }
  if (!report.valid) return report;

  // Elements: pattern vertices 0..h-1, then pattern edges h..h+|E|-1.
  const int total = h + static_cast<int>(pedges.size());
  auto element = [&](int i) { return i < h ? m.branch_sets[i] : m.edge_paths[i - h].vertex_set(); };
  auto incident = [&](int i, int j) {
    if (i >= h && j < h) std::swap(i, j);
    if (i < h && j >= h) {
      const Edge& e = pedges[j - h];
      return e.u == i || e.v == i;
    }
    return false;
  };
  for (int i = 0; i < total; ++i)
    for (int j = i + 1; j < total; ++j) {
      if (incident(i, j)) continue;
      if (!at_least(set_distance(g, element(i), element(j)), m.fatness))
        fail("fatness: elements " + std::to_string(i) + " and " + std::to_string(j));
    }
  if (m.roots)
    for (int i = 0; i < h; ++i)
      if (!intersects(m.branch_sets[i], (*m.roots)[i])) fail("root: pattern vertex " + std::to_string(i));
  return report;
}

FatMinorModel lxy_path_to_rooted_k2(const Graph& g, const PathWitness& p, double ell, const VertexSet& x,
                                    const VertexSet& y) {
  if (!is_lxy_path(g, p, ell, x, y)) throw InputError("not an (l,X,Y)-path");
  if (p.sequence.size() < 2) throw InputError("degenerate single-vertex path: a K2 model needs two branch sets");
  PathWitness oriented = p;
  if (!(x.contains(p.end_a()) && y.contains(p.end_b())))
    std::reverse(oriented.sequence.begin(), oriented.sequence.end());
  FatMinorModel m;
  m.pattern = Graph(2);
  m.pattern.add_edge(0, 1);
  m.branch_sets = {VertexSet{oriented.end_a()}, VertexSet{oriented.end_b()}};
  m.edge_paths = {oriented};
  m.fatness = ell;
  m.roots = std::vector<VertexSet>{x, y};
  return m;
}

std::vector<Vertex> shortest_hop_path(const Graph& g, Vertex s, Vertex t, const std::vector<char>& allowed) {
  g.require_vertex(s);
  g.require_vertex(t);
  const int n = g.vertex_count();
  auto ok = [&](Vertex v) { return allowed.empty() || allowed[v]; };
  if (!ok(s) || !ok(t)) return {};
  std::vector<int> hops(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> queue{t};
  hops[t] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const Arc& a : g.neighbors(queue[i]))
      if (ok(a.to) && hops[a.to] < 0) {
        hops[a.to] = hops[queue[i]] + 1;
        queue.push_back(a.to);
      }
  if (hops[s] < 0) return {};
  std::vector<Vertex> path{s};
  while (path.back() != t) {
    Vertex cur = path.back();
    for (const Arc& a : g.neighbors(cur))
      if (ok(a.to) && hops[a.to] == hops[cur] - 1) {
        path.push_back(a.to);
        break;
      }
  }
  return path;
}

}  // namespace coarse_menger
