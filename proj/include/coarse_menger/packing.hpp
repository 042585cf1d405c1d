#pragma once

#include <string>
#include <vector>

#include "coarse_menger/caps.hpp"
#include "coarse_menger/centered.hpp"
#include "coarse_menger/paths.hpp"

namespace coarse_menger {

struct PackingInstance {
  Graph host;
  VertexSet x;
  VertexSet y;
  double ell = 0;
  double r = 1;
  SearchMode mode = SearchMode::exact;
};

struct PackingStats {
  std::string method;  // "greedy", "bounds" or "independent-set"
  std::size_t candidate_paths = 0;
  std::size_t nodes = 0;
  std::size_t lower_bound = 0;
  std::size_t upper_bound = 0;
};

struct PackingSolution {
  std::vector<PathWitness> paths;
  double certified_min_pairwise_distance = kInfinity;
  bool optimal = false;
  PackingStats stats;

  std::size_t size() const { return paths.size(); }
};

// Largest collection of (ell, x, y)-paths pairwise at distance >= r.
//
// Exact mode first compares a greedy collection against two upper bounds: the
// number of pairwise r-far x-vertices (and y-vertices), and the Menger number.
// When they meet the greedy collection is optimal; otherwise chordless candidate
// paths are enumerated (host capped at caps.path_enumeration_vertices) and a
// maximum independent set of the "closer than r" conflict graph is found.
// Greedy mode repeatedly inserts the path with fewest edges, then least canonical
// sequence, among those still at distance >= r from every chosen path.
PackingSolution max_far_packing(const Graph& g, const VertexSet& x, const VertexSet& y, double ell, double r,
                                SearchMode mode = SearchMode::exact, const Caps& caps = default_caps());
PackingSolution max_far_packing(const PackingInstance& inst, const Caps& caps = default_caps());

// Every path is an (ell, x, y)-path and every pair is at distance >= r.
bool verify_packing(const Graph& g, const std::vector<PathWitness>& paths, double ell, const VertexSet& x,
                    const VertexSet& y, double r);
double min_pairwise_distance(const Graph& g, const std::vector<PathWitness>& paths);

// Maximum number of vertex-disjoint x-y paths (vertex-capacitated max flow).
int menger_packing(const Graph& g, const VertexSet& x, const VertexSet& y);
// A maximum family of vertex-disjoint x-y paths read off the flow.
std::vector<PathWitness> menger_paths(const Graph& g, const VertexSet& x, const VertexSet& y);

struct GallaiPacking {
  std::vector<PathWitness> paths;
  std::string mode = "exhaustive";
  std::size_t size() const { return paths.size(); }
};

// Maximum number of vertex-disjoint A-paths by exhaustive search (host capped at caps.gallai_vertices).
GallaiPacking gallai_packing(const Graph& g, const VertexSet& a, const Caps& caps = default_caps());

}  // namespace coarse_menger
