#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse_menger/caps.hpp"
#include "coarse_menger/centered.hpp"

namespace coarse_menger {

// Tree nodes are the vertices of `tree`; bags[t] is the bag at node t.
struct TreeDecomposition {
  Graph tree;
  std::vector<VertexSet> bags;

  int width() const;
};

struct DecompositionCheck {
  bool valid = true;
  std::string violation;
  explicit operator bool() const { return valid; }
};

// Checks that td decomposes the subgraph of g induced on `within` (all of g when empty).
DecompositionCheck check_decomposition(const Graph& g, const TreeDecomposition& td,
                                       const std::optional<VertexSet>& within = std::nullopt);

// Min-degree elimination ordering, ties by lowest vertex. One node per eliminated vertex.
TreeDecomposition min_degree_decomposition(const Graph& g);

// A separation stored by its vertex sides. Edges inside the separator are owned by one
// side by convention of the consumer; order and membership only use vertex data.
struct Separation {
  VertexSet a;
  VertexSet b;

  VertexSet separator() const { return set_intersection(a, b); }
  int order() const { return static_cast<int>(separator().size()); }
  friend bool operator==(const Separation&, const Separation&) = default;
  friend auto operator<=>(const Separation&, const Separation&) = default;
};

// a ∪ b = host and no edge of g[host] joins a - b to b - a.
bool is_separation(const Graph& g, const VertexSet& host, const Separation& s);

// Separator edges go to the B side, so A ⊆ B' reduces to V(A) ⊆ V(B').
using Location = std::vector<Separation>;
bool is_location(const Graph& g, const VertexSet& host, const Location& loc);

struct HellyResult {
  bool packing = false;
  std::vector<int> disjoint;  // indices of pairwise disjoint members (k of them on the packing branch)
  VertexSet hitting;          // tree nodes meeting every member (at most k - 1 on the hitting branch)
};

// k pairwise disjoint subtrees or at most k - 1 nodes meeting all of them. Rooted at the
// lowest node; repeatedly keeps the member whose top node is deepest (ties: lower top,
// then lower index) and discards everything through that top.
HellyResult tree_helly(const Graph& tree, const std::vector<VertexSet>& subtrees, int k);

// quotas[i] members from families[i], all pairwise disjoint. Each family must hold k
// disjoint members where k = sum of quotas; violation throws PreconditionError naming it.
std::vector<std::vector<int>> multi_family_select(const Graph& tree, const std::vector<std::vector<VertexSet>>& families,
                                                  const std::vector<int>& quotas, int k,
                                                  std::size_t node_budget = 20000000);

// members[i][j] is the vertex set of the j-th component of member i.
struct ExchangeableFamily {
  int component_count = 1;
  std::vector<std::vector<VertexSet>> members;
};

// Components of each member are connected in g[host], disjoint and pairwise non-adjacent.
// Returns a description of the first failure, empty when fine.
std::string check_family_shape(const Graph& g, const VertexSet& host, const ExchangeableFamily& f);

// Samples recombinations F_1(1) ∪ ... ∪ F_c(c) of random members with disjoint picks and
// checks membership. Returns a description of the first failure, empty when fine.
std::string check_exchange(const ExchangeableFamily& f, std::uint64_t seed, int samples = 100);

struct EasyTreeInput {
  Graph g;
  VertexSet l;  // the subgraph L = g[l]
  ExchangeableFamily family;
  Location location;
  TreeDecomposition td;  // decomposes g[l ∩ all B sides]; each separator lies in a bag
  double r = 0;
  int k = 1;
  int xi = 0;
  double eta = 0;
  // Optional per-bag certificates; otherwise bags are certified here.
  std::vector<CenteredSet> bag_certificates;
};

struct EasyTreeResult {
  bool packing = false;
  // k members (as component lists) pairwise at distance > 2r on the packing branch.
  std::vector<std::vector<VertexSet>> members;
  // ((c k - 1) xi, eta + r)-centered set meeting every member on the hitting branch.
  CenteredSet hitting;
  std::vector<int> hitting_nodes;
};

// Either k members pairwise at distance greater than 2r, or a ((c k - 1) xi, eta + r)-centered
// set meeting every member. Hypotheses are checked first and reported as PreconditionError.
EasyTreeResult easy_tree_hitting(const EasyTreeInput& in, const Caps& caps = default_caps());

}  // namespace coarse_menger
