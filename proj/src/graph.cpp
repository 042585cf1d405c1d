#include "coarse_menger/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <queue>
#include <string>

namespace coarse_menger {

VertexSet::VertexSet(std::initializer_list<Vertex> members) : VertexSet(std::vector<Vertex>(members)) {}

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::from_mask(const std::vector<char>& mask) {
  VertexSet out;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v]) out.members_.push_back(static_cast<Vertex>(v));
  return out;
}

VertexSet VertexSet::range(int n) {
  VertexSet out;
  out.members_.resize(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) out.members_[i] = i;
  return out;
}

bool VertexSet::contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

void VertexSet::insert(Vertex v) {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) members_.insert(it, v);
}

std::vector<char> VertexSet::mask(int n) const {
  std::vector<char> m(static_cast<std::size_t>(n), 0);
  for (Vertex v : members_)
    if (v >= 0 && v < n) m[v] = 1;
  return m;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

bool is_subset(const VertexSet& a, const VertexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool intersects(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

struct Graph::DistanceCache {
  std::once_flag once;
  std::vector<double> table;
};

Graph::Graph() : cache_(std::make_shared<DistanceCache>()) {}

Graph::Graph(int vertex_count) : Graph() {
  if (vertex_count < 0) throw InputError("negative vertex count");
  adjacency_.resize(static_cast<std::size_t>(vertex_count));
  labels_.resize(static_cast<std::size_t>(vertex_count));
  for (int i = 0; i < vertex_count; ++i) labels_[i] = i;
}

Graph Graph::with_labels(const std::vector<Label>& labels) {
  Graph g;
  g.adjacency_.reserve(labels.size());
  for (Label l : labels) g.add_vertex(l);
  return g;
}

void Graph::require_vertex(Vertex v) const {
  if (!has_vertex(v)) throw InputError("unknown vertex " + std::to_string(v));
}

void Graph::require_subset(const VertexSet& s) const {
  for (Vertex v : s) require_vertex(v);
}

std::optional<Vertex> Graph::find_label(Label label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Vertex>(it - labels_.begin());
}

Vertex Graph::add_vertex(Label label) {
  if (label < 0) throw InputError("vertex ids must be nonnegative");
  if (find_label(label)) throw InputError("duplicate vertex id " + std::to_string(label));
  adjacency_.emplace_back();
  labels_.push_back(label);
  invalidate();
  return vertex_count() - 1;
}

Vertex Graph::add_vertex() {
  Label next = labels_.empty() ? 0 : *std::max_element(labels_.begin(), labels_.end()) + 1;
  return add_vertex(next);
}

void Graph::add_edge(Vertex u, Vertex v) {
  add_edge(u, v, 1.0);
}

void Graph::add_edge(Vertex u, Vertex v, double weight) {
  require_vertex(u);
  require_vertex(v);
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(label(u)));
  if (!(weight > 0) || !std::isfinite(weight)) throw InputError("edge weights must be finite and positive");
  if (adjacent(u, v)) throw InputError("parallel edge " + std::to_string(label(u)) + "-" + std::to_string(label(v)));
  auto insert_arc = [&](Vertex from, Vertex to) {
    auto& list = adjacency_[from];
    auto it = std::lower_bound(list.begin(), list.end(), to, [](const Arc& a, Vertex x) { return a.to < x; });
    list.insert(it, Arc{to, weight});
  };
  insert_arc(u, v);
  insert_arc(v, u);
  edges_.push_back(Edge{std::min(u, v), std::max(u, v), weight});
  if (weight != 1.0) weighted_ = true;
  invalidate();
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (!has_vertex(u) || !has_vertex(v)) return false;
  const auto& list = adjacency_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v, [](const Arc& a, Vertex x) { return a.to < x; });
  return it != list.end() && it->to == v;
}

double Graph::edge_weight(Vertex u, Vertex v) const {
  require_vertex(u);
  const auto& list = adjacency_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v, [](const Arc& a, Vertex x) { return a.to < x; });
  if (it == list.end() || it->to != v) throw InputError("no edge between the given vertices");
  return it->weight;
}

void Graph::invalidate() { cache_ = std::make_shared<DistanceCache>(); }

const Graph::DistanceCache& Graph::cache() const {
  DistanceCache& c = *cache_;
  std::call_once(c.once, [&] {
    const int n = vertex_count();
    c.table.assign(static_cast<std::size_t>(n) * n, kInfinity);
    for (Vertex s = 0; s < n; ++s) {
      auto row = shortest_distances(*this, {s});
      std::copy(row.begin(), row.end(), c.table.begin() + static_cast<std::ptrdiff_t>(s) * n);
    }
  });
  return c;
}

double Graph::distance(Vertex u, Vertex v) const {
  require_vertex(u);
  require_vertex(v);
  return cache().table[static_cast<std::size_t>(u) * vertex_count() + v];
}

std::span<const double> Graph::distances_from(Vertex source) const {
  require_vertex(source);
  const auto& t = cache().table;
  return {t.data() + static_cast<std::size_t>(source) * vertex_count(), static_cast<std::size_t>(vertex_count())};
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.labels() != b.labels() || a.edge_count() != b.edge_count()) return false;
  for (Vertex v = 0; v < a.vertex_count(); ++v) {
    auto x = a.neighbors(v);
    auto y = b.neighbors(v);
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].to != y[i].to || x[i].weight != y[i].weight) return false;
  }
  return true;
}

std::vector<double> shortest_distances(const Graph& g, const std::vector<Vertex>& sources,
                                       const std::vector<char>& allowed) {
  const int n = g.vertex_count();
  std::vector<double> dist(static_cast<std::size_t>(n), kInfinity);
  auto ok = [&](Vertex v) { return allowed.empty() || allowed[v]; };
  if (!g.is_weighted()) {
    std::deque<Vertex> queue;
    for (Vertex s : sources) {
      g.require_vertex(s);
      if (ok(s) && dist[s] != 0) {
        dist[s] = 0;
        queue.push_back(s);
      }
    }
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (const Arc& a : g.neighbors(u)) {
        if (ok(a.to) && dist[a.to] == kInfinity) {
          dist[a.to] = dist[u] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return dist;
  }
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (Vertex s : sources) {
    g.require_vertex(s);
    if (ok(s)) {
      dist[s] = 0;
      heap.emplace(0.0, s);
    }
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const Arc& a : g.neighbors(u)) {
      if (!ok(a.to)) continue;
      double nd = d + a.weight;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        heap.emplace(nd, a.to);
      }
    }
  }
  return dist;
}

double distance(const Graph& g, Vertex u, Vertex v) { return g.distance(u, v); }

double set_distance(const Graph& g, const VertexSet& s, const VertexSet& t) {
  if (s.empty() || t.empty()) throw InputError("set distance of an empty set");
  g.require_subset(s);
  g.require_subset(t);
  double best = kInfinity;
  for (Vertex a : s) {
    auto row = g.distances_from(a);
    for (Vertex b : t) best = std::min(best, row[b]);
  }
  return best;
}

std::vector<double> distance_to_set(const Graph& g, const VertexSet& s) {
  g.require_subset(s);
  std::vector<double> out(static_cast<std::size_t>(g.vertex_count()), kInfinity);
  for (Vertex a : s) {
    auto row = g.distances_from(a);
    for (Vertex v = 0; v < g.vertex_count(); ++v) out[v] = std::min(out[v], row[v]);
  }
  return out;
}

VertexSet neighborhood(const Graph& g, const VertexSet& s, double r) {
  if (r < 0) throw InputError("negative neighborhood radius");
  auto d = distance_to_set(g, s);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (within(d[v], r)) out.push_back(v);
  return VertexSet(std::move(out));
}

VertexSet open_neighborhood(const Graph& g, const VertexSet& s) {
  g.require_subset(s);
  std::vector<Vertex> out;
  for (Vertex u : s)
    for (const Arc& a : g.neighbors(u))
      if (!s.contains(a.to)) out.push_back(a.to);
  return VertexSet(std::move(out));
}

std::vector<VertexSet> components(const Graph& g, const VertexSet& within_set) {
  g.require_subset(within_set);
  const int n = g.vertex_count();
  std::vector<char> inside = within_set.mask(n);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<VertexSet> out;
  for (Vertex s : within_set) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (const Arc& a : g.neighbors(comp[i]))
        if (inside[a.to] && !seen[a.to]) {
          seen[a.to] = 1;
          comp.push_back(a.to);
        }
    out.emplace_back(std::move(comp));
  }
  return out;
}

std::vector<VertexSet> components(const Graph& g) { return components(g, g.vertices()); }

bool is_connected(const Graph& g, const VertexSet& within_set) { return components(g, within_set).size() <= 1; }

bool is_tree(const Graph& g) {
  return g.vertex_count() > 0 && g.edge_count() == g.vertex_count() - 1 && is_connected(g, g.vertices());
}

}  // namespace coarse_menger
