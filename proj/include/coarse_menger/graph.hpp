#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "coarse_menger/errors.hpp"

namespace coarse_menger {

// Vertices are dense indices 0..n-1. Each carries an external integer label
// used for file round-trips; generators use label == index.
using Vertex = int;
using Label = std::int64_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kTolerance = 1e-9;

// d <= r with the absolute comparison tolerance.
inline bool within(double d, double r) { return d <= r + kTolerance; }
// d >= r with the absolute comparison tolerance.
inline bool at_least(double d, double r) { return d >= r - kTolerance; }

// Sorted, duplicate-free set of vertices.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members);
  explicit VertexSet(std::vector<Vertex> members);
  static VertexSet from_mask(const std::vector<char>& mask);
  static VertexSet range(int n);

  bool contains(Vertex v) const;
  void insert(Vertex v);
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  Vertex front() const { return members_.front(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Vertex>& members() const { return members_; }
  std::vector<char> mask(int n) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.members_ <=> b.members_; }

 private:
  std::vector<Vertex> members_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);
bool intersects(const VertexSet& a, const VertexSet& b);

struct Arc {
  Vertex to;
  double weight;
};

struct Edge {
  Vertex u;
  Vertex v;
  double weight;
};

// Finite simple graph with strictly positive edge lengths (1 when unweighted).
// All-pairs distances are computed once on first use and shared by copies.
class Graph {
 public:
  Graph();
  explicit Graph(int vertex_count);
  static Graph with_labels(const std::vector<Label>& labels);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool is_weighted() const { return weighted_; }
  bool has_vertex(Vertex v) const { return v >= 0 && v < vertex_count(); }
  void require_vertex(Vertex v) const;
  void require_subset(const VertexSet& s) const;

  Label label(Vertex v) const { return labels_[v]; }
  const std::vector<Label>& labels() const { return labels_; }
  std::optional<Vertex> find_label(Label label) const;

  Vertex add_vertex(Label label);
  Vertex add_vertex();
  void add_edge(Vertex u, Vertex v);
  void add_edge(Vertex u, Vertex v, double weight);
  bool adjacent(Vertex u, Vertex v) const;
  double edge_weight(Vertex u, Vertex v) const;
  std::span<const Arc> neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  // Edges with u < v, in insertion order.
  const std::vector<Edge>& edges() const { return edges_; }
  VertexSet vertices() const { return VertexSet::range(vertex_count()); }

  double distance(Vertex u, Vertex v) const;
  // Row of the cached all-pairs table: distances from `source`.
  std::span<const double> distances_from(Vertex source) const;

 private:
  struct DistanceCache;
  const DistanceCache& cache() const;
  void invalidate();

  std::vector<std::vector<Arc>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<Label> labels_;
  bool weighted_ = false;
  mutable std::shared_ptr<DistanceCache> cache_;
};

bool operator==(const Graph& a, const Graph& b);

// Single-source shortest-path lengths restricted to vertices with allowed[v] != 0
// (all vertices when `allowed` is empty). Breadth-first on unweighted graphs.
std::vector<double> shortest_distances(const Graph& g, const std::vector<Vertex>& sources,
                                       const std::vector<char>& allowed = {});

double distance(const Graph& g, Vertex u, Vertex v);
double set_distance(const Graph& g, const VertexSet& s, const VertexSet& t);
// Distance from every vertex to the set `s` (kInfinity for s empty).
std::vector<double> distance_to_set(const Graph& g, const VertexSet& s);
// N≤r[s]: vertices at distance at most r from s.
VertexSet neighborhood(const Graph& g, const VertexSet& s, double r);
// N(s): vertices outside s adjacent to s.
VertexSet open_neighborhood(const Graph& g, const VertexSet& s);
// Connected components of the subgraph induced on `within` (all vertices when omitted),
// ordered by smallest member.
std::vector<VertexSet> components(const Graph& g, const VertexSet& within);
std::vector<VertexSet> components(const Graph& g);
bool is_connected(const Graph& g, const VertexSet& within);
bool is_tree(const Graph& g);

}  // namespace coarse_menger
