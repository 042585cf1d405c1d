#include "coarse_menger/centered.hpp"

#include <algorithm>

namespace coarse_menger {

const char* to_string(SearchMode mode) { return mode == SearchMode::exact ? "exact" : "greedy"; }

bool verify_centered(const Graph& g, const CenteredSet& c) {
  for (Vertex v : c.centers)
    if (!g.has_vertex(v)) return false;
  for (Vertex v : c.z)
    if (!g.has_vertex(v)) return false;
  if (c.radius < 0) return false;
  if (c.z.empty()) return true;
  if (c.centers.empty()) return false;
  auto d = distance_to_set(g, c.centers);
  return std::all_of(c.z.begin(), c.z.end(), [&](Vertex v) { return within(d[v], c.radius); });
}

CenteredSet ball_union(const Graph& g, const VertexSet& centers, double r) {
  return CenteredSet{centers.empty() ? VertexSet{} : neighborhood(g, centers, r), centers, r};
}

namespace {

struct CenterSearch {
  const Graph& g;
  std::vector<Vertex> targets;
  std::vector<std::vector<Vertex>> candidates;  // per target: centers within r
  std::size_t budget;
  std::size_t nodes = 0;
  std::vector<Vertex> chosen;

  bool covered(std::size_t t) const {
    for (Vertex c : chosen)
      if (std::binary_search(candidates[t].begin(), candidates[t].end(), c)) return true;
    return false;
  }

  bool dfs(int remaining) {
    if (++nodes > budget) throw CapacityError("centered-set search exceeded its node budget");
    std::size_t pick = targets.size();
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (covered(t)) continue;
      if (pick == targets.size() || candidates[t].size() < candidates[pick].size()) pick = t;
    }
    if (pick == targets.size()) return true;
    if (remaining == 0) return false;
    for (Vertex c : candidates[pick]) {
      chosen.push_back(c);
      if (dfs(remaining - 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

CenteringResult certify_centered(const Graph& g, const VertexSet& z, int k, double r, SearchMode mode,
                                 const Caps& caps) {
  g.require_subset(z);
  if (k < 0) throw InputError("negative center budget");
  if (r < 0) throw InputError("negative radius");
  CenteringResult result;
  result.mode = mode;
  if (z.empty()) {
    result.certificate = CenteredSet{z, {}, r};
    return result;
  }
  const int n = g.vertex_count();
  if (mode == SearchMode::exact) {
    if (n > caps.centered_exact_vertices)
      throw CapacityError("exact centered-set search is capped at " + std::to_string(caps.centered_exact_vertices) +
                          " vertices");
    CenterSearch search{g, z.members(), {}, caps.search_nodes};
    for (Vertex t : z) {
      auto row = g.distances_from(t);
      std::vector<Vertex> cand;
      for (Vertex c = 0; c < n; ++c)
        if (within(row[c], r)) cand.push_back(c);
      search.candidates.push_back(std::move(cand));
    }
    for (int size = 1; size <= std::min(k, n); ++size) {
      search.chosen.clear();
      if (search.dfs(size)) {
        result.certificate = CenteredSet{z, VertexSet(search.chosen), r};
        return result;
      }
    }
    result.refusal = "exhaustive-center-search-failed";
    return result;
  }
  std::vector<char> open = z.mask(n);
  std::size_t left = z.size();
  std::vector<Vertex> chosen;
  while (left > 0) {
    if (static_cast<int>(chosen.size()) >= k) {
      result.refusal = "greedy-center-cover-failed";
      return result;
    }
    Vertex best = -1;
    std::size_t best_gain = 0;
    for (Vertex c = 0; c < n; ++c) {
      auto row = g.distances_from(c);
      std::size_t gain = 0;
      for (Vertex t : z)
        if (open[t] && within(row[t], r)) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    auto row = g.distances_from(best);
    for (Vertex t : z)
      if (open[t] && within(row[t], r)) {
        open[t] = 0;
        --left;
      }
    chosen.push_back(best);
  }
  result.certificate = CenteredSet{z, VertexSet(chosen), r};
  return result;
}

}  // namespace coarse_menger
