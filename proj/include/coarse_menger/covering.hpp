#pragma once

#include <string>
#include <variant>
#include <vector>

#include "coarse_menger/caps.hpp"
#include "coarse_menger/centered.hpp"
#include "coarse_menger/paths.hpp"

namespace coarse_menger {

// All (ell, x, y)-paths of the host.
struct LxyFamily {
  double ell = 0;
  VertexSet x;
  VertexSet y;
};

// All A-paths of the host.
struct APathFamily {
  VertexSet a;
};

// Families to be hit: implicit path families or an explicit list of vertex sets.
using PathFamily = std::variant<LxyFamily, APathFamily, std::vector<VertexSet>>;

struct CoverInstance {
  Graph host;
  PathFamily family;
  double radius = 0;
  SearchMode mode = SearchMode::exact;
};

struct CoverResult {
  CenteredSet certificate;  // z is the union of the chosen balls
  bool optimal = false;
  std::size_t nodes = 0;

  std::size_t count() const { return certificate.centers.size(); }
};

// Fewest vertex-centered radius-`radius` balls whose union meets every family member.
// Implicit families are never enumerated: the search asks for a member avoiding the
// current union and branches over the centers close to it.
CoverResult min_ball_hitting(const Graph& g, const PathFamily& family, double radius,
                             SearchMode mode = SearchMode::exact, const Caps& caps = default_caps());
CoverResult min_ball_hitting(const CoverInstance& inst, const Caps& caps = default_caps());

// Does z meet every member?
bool hits_family(const Graph& g, const PathFamily& family, const VertexSet& z);

struct DualityCell {
  double threshold = 0;
  std::size_t value = 0;
  bool exact = false;
  std::string flag;  // "capacity" when the exact solver was capped and greedy filled in
};

struct DualityReport {
  std::string fingerprint;
  double ell = 0;
  std::vector<DualityCell> packing_by_r;
  std::vector<DualityCell> cover_by_radius;

  bool capacity_hit() const;
};

// Packing sizes for each r and cover sizes for each beta on one (ell, x, y) instance.
DualityReport duality_sweep(const Graph& g, const VertexSet& x, const VertexSet& y, double ell,
                            const std::vector<double>& r_values, const std::vector<double>& beta_values,
                            const Caps& caps = default_caps());

// Exact cells with r > 2 beta and cover < packing, described one per line.
std::vector<std::string> weak_duality_violations(const DualityReport& report);

// Stable 64-bit hex digest of the graph, terminals and ell.
std::string instance_fingerprint(const Graph& g, const VertexSet& x, const VertexSet& y, double ell);

// Rows "kind,threshold,value,exact,flag".
std::string to_csv(const DualityReport& report);

struct GallaiVerdict {
  enum class Branch { packing, hitting };
  Branch branch = Branch::packing;
  int k = 0;
  std::vector<PathWitness> paths;  // k disjoint A-paths on the packing branch
  VertexSet hitting_set;           // minimum vertex set meeting every A-path otherwise
  bool valid = false;              // the witness re-checks and respects |Z| <= 2k - 2
};

// Either k disjoint A-paths, or a hitting set of at most 2k - 2 vertices.
GallaiVerdict gallai_check(const Graph& g, const VertexSet& a, int k, const Caps& caps = default_caps());

}  // namespace coarse_menger
