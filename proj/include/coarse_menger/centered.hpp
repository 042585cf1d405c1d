#pragma once

#include <optional>
#include <string>

#include "coarse_menger/caps.hpp"
#include "coarse_menger/graph.hpp"

namespace coarse_menger {

// Z together with centers W and radius r certifying Z ⊆ N≤r[W].
struct CenteredSet {
  VertexSet z;
  VertexSet centers;
  double radius = 0;

  std::size_t center_count() const { return centers.size(); }
};

enum class SearchMode { exact, greedy };

const char* to_string(SearchMode mode);

// Outcome of certify_centered: a certificate, or the identifier of the failed obligation.
struct CenteringResult {
  SearchMode mode = SearchMode::exact;
  std::optional<CenteredSet> certificate;
  std::string refusal;

  explicit operator bool() const { return certificate.has_value(); }
};

// True when z ⊆ N≤radius[centers] and the centers are vertices of g.
bool verify_centered(const Graph& g, const CenteredSet& c);

// Is z contained in at most k balls of radius r centered at vertices of g?
// Exact mode returns a minimum center set and throws CapacityError when |V(g)|
// exceeds caps.centered_exact_vertices. Greedy mode may refuse feasible inputs.
CenteringResult certify_centered(const Graph& g, const VertexSet& z, int k, double r,
                                 SearchMode mode = SearchMode::exact, const Caps& caps = default_caps());

// Union of balls N≤r[centers], packaged as a certificate.
CenteredSet ball_union(const Graph& g, const VertexSet& centers, double r);

}  // namespace coarse_menger
