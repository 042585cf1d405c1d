#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarse_menger/caps.hpp"
#include "coarse_menger/centered.hpp"
#include "coarse_menger/paths.hpp"
#include "coarse_menger/tree.hpp"

namespace coarse_menger {

// A connected pattern W with one root set per pattern vertex.
struct RootedPattern {
  Graph pattern;
  std::vector<VertexSet> roots;
  double ell = 0;
};

// Some rooted ell-fat model of the pattern using only vertices in `allowed`
// (distances still measured in g). Polynomial for ell = 0 and for K2; otherwise
// exhaustive on at most caps.model_vertices allowed vertices.
std::optional<FatMinorModel> find_rooted_model(const Graph& g, const RootedPattern& p, const VertexSet& allowed,
                                               const Caps& caps = default_caps());

// Are there `count` pairwise vertex-disjoint rooted models? Enumerates connected vertex
// sets (host capped at caps.connected_set_vertices); only count = 2 is supported.
bool has_disjoint_rooted_models(const Graph& g, const RootedPattern& p, const Caps& caps = default_caps());

// Minimum vertex set meeting every rooted model.
VertexSet min_model_hitting_set(const Graph& g, const RootedPattern& p, const Caps& caps = default_caps());

struct RootedEpResult {
  bool packing = false;
  std::vector<FatMinorModel> models;  // k models pairwise at distance >= r on the packing branch
  CenteredSet hitting;                // meets every rooted model otherwise
  double translated_radius = 0;       // radius handed to the tree lemma
  double fattening_radius = 0;        // models are fattened by this much before hitting
  int bag_size = 0;
  std::string route;  // "explicit" (family listed, tree lemma) or "implicit" (oracle-driven Helly)
};

// k rooted ell-fat models pairwise at distance >= r, or a set with at most (k - 1) w
// centers and radius max(ceil((r - 1) / 2), a) meeting all of them, where w is the
// largest bag of td and a = max(ceil(ell / 2) - 1, 0). Unweighted hosts only.
RootedEpResult rooted_fat_minor_ep(const Graph& g, const TreeDecomposition& td, const RootedPattern& p, int k, double r,
                                   const Caps& caps = default_caps());

}  // namespace coarse_menger
