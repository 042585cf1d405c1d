#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "coarse_menger/graph.hpp"

namespace coarse_menger {

using Bits = boost::dynamic_bitset<std::uint64_t>;

struct IndependentSetResult {
  std::vector<int> members;  // ascending indices
  bool optimal = false;
  std::size_t nodes = 0;
};

// Maximum independent set of a conflict graph given as symmetric adjacency bitsets.
// Branch-and-bound over the complement with greedy clique-cover bounds. Stops early
// once `upper_bound` is reached; gives up with optimal = false after `node_budget`.
// `seed` is an independent set used as the initial incumbent.
IndependentSetResult maximum_independent_set(const std::vector<Bits>& conflicts, std::size_t upper_bound,
                                             std::size_t node_budget, const std::vector<int>& seed = {});

// A family of vertex sets described only through a membership oracle.
class ImplicitFamily {
 public:
  virtual ~ImplicitFamily() = default;
  // Some member avoiding every blocked vertex, preferring few vertices; nullopt when all are hit.
  virtual std::optional<VertexSet> unhit_member(const std::vector<char>& blocked) const = 0;
  // Nonnegative measure of what is still unhit; zero exactly when unhit_member is empty.
  virtual std::size_t residual(const std::vector<char>& blocked) const = 0;
};

struct BallCoverResult {
  VertexSet centers;
  bool optimal = false;
  std::size_t nodes = 0;
};

// Fewest radius-r balls (vertex centers) whose union hits every member. Iterative deepening:
// each node asks the oracle for an unhit member and branches over the centers within r of it.
BallCoverResult exact_ball_cover(const Graph& g, double radius, const ImplicitFamily& family,
                                 std::size_t node_budget);
// Greedy: while some member is unhit, add the center near it that minimizes the residual.
BallCoverResult greedy_ball_cover(const Graph& g, double radius, const ImplicitFamily& family);

// Explicit family: set cover with members as elements and balls as sets.
BallCoverResult exact_ball_cover(const Graph& g, double radius, const std::vector<VertexSet>& members,
                                 std::size_t node_budget);
BallCoverResult greedy_ball_cover(const Graph& g, double radius, const std::vector<VertexSet>& members);

}  // namespace coarse_menger
