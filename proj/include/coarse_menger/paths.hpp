#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarse_menger/caps.hpp"
#include "coarse_menger/graph.hpp"

namespace coarse_menger {

// A simple path given by its vertex sequence. A single vertex is a path of length 0.
struct PathWitness {
  std::vector<Vertex> sequence;
  double endpoint_distance = 0;

  Vertex end_a() const { return sequence.front(); }
  Vertex end_b() const { return sequence.back(); }
  std::size_t edge_count() const { return sequence.empty() ? 0 : sequence.size() - 1; }
  VertexSet vertex_set() const { return VertexSet(sequence); }

  friend bool operator==(const PathWitness& a, const PathWitness& b) { return a.sequence == b.sequence; }
};

bool is_simple_path(const Graph& g, const std::vector<Vertex>& sequence);
// Validates the sequence and fills in the endpoint distance; throws InputError when invalid.
PathWitness make_path(const Graph& g, std::vector<Vertex> sequence);
// The lexicographically smaller of the path and its reversal.
PathWitness canonical(PathWitness p);
double path_length(const Graph& g, const PathWitness& p);

// One end in x, the other in y, endpoint distance at least ell.
bool is_lxy_path(const Graph& g, const PathWitness& p, double ell, const VertexSet& x, const VertexSet& y);
// Both ends in a and distinct.
bool is_a_path(const Graph& g, const PathWitness& p, const VertexSet& a);

struct PathEnumeration {
  std::vector<PathWitness> paths;
  bool truncated = false;
};

// All simple (ell, x, y)-paths up to reversal, in canonical lexicographic order.
// Without a cap the host must have at most caps.path_enumeration_vertices vertices.
PathEnumeration enumerate_paths(const Graph& g, double ell, const VertexSet& x, const VertexSet& y,
                                std::optional<std::size_t> cap = std::nullopt, const Caps& caps = default_caps());
PathEnumeration enumerate_a_paths(const Graph& g, const VertexSet& a, std::optional<std::size_t> cap = std::nullopt,
                                  const Caps& caps = default_caps());

// Generic depth-first simple-path search. Paths are grown from each allowed start in
// ascending order with neighbors in ascending order, so emissions are lexicographic.
// A path is reported when accept(start, end) holds and end >= start (one orientation).
struct PathSearch {
  std::function<bool(Vertex)> start_ok;
  std::function<bool(Vertex, Vertex)> accept;
  // Growth continues only while this holds for (sequence, length so far).
  std::function<bool(const std::vector<Vertex>&, double)> extend_ok;
  // Vertices that may end a path but never lie in its interior.
  std::vector<char> interior_forbidden;
  // Only chordless paths.
  bool induced_only = false;
};

// Throws CapacityError when more than `node_budget` extensions are explored; stops and
// sets `truncated` after `limit` emissions.
std::vector<std::vector<Vertex>> search_paths(const Graph& g, const PathSearch& spec, std::size_t limit,
                                              std::size_t node_budget, bool& truncated);

// An ℓ-fat minor model of a small pattern graph. Branch sets are vertex sets inducing
// connected subgraphs; edge_paths follow pattern.edges() order.
struct FatMinorModel {
  Graph pattern;
  std::vector<VertexSet> branch_sets;
  std::vector<PathWitness> edge_paths;
  double fatness = 0;
  std::optional<std::vector<VertexSet>> roots;
};

struct ModelCheck {
  bool valid = true;
  std::vector<std::string> violations;
  explicit operator bool() const { return valid; }
};

ModelCheck check_fat_minor(const Graph& g, const FatMinorModel& m);
VertexSet model_union(const FatMinorModel& m);
double model_distance(const Graph& g, const FatMinorModel& a, const FatMinorModel& b);

// The K2 model {x-end}, {y-end} joined by p. Refuses single-vertex paths.
FatMinorModel lxy_path_to_rooted_k2(const Graph& g, const PathWitness& p, double ell, const VertexSet& x,
                                    const VertexSet& y);

// Shortest path (fewest edges) between two vertices inside `allowed`, lexicographically
// least among those; empty when none exists.
std::vector<Vertex> shortest_hop_path(const Graph& g, Vertex s, Vertex t, const std::vector<char>& allowed = {});

}  // namespace coarse_menger
