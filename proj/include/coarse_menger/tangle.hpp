#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarse_menger/caps.hpp"
#include "coarse_menger/centered.hpp"
#include "coarse_menger/tree.hpp"

namespace coarse_menger {

// Separations of the induced subgraph g[host] with |separator| < theta, one per
// unordered pair {V(A), V(B)} stored with a <= b, in ascending order. Separator edges
// belong to whichever side is written first. Orders of 2 or more need
// |host| <= caps.separation_vertices; theta is capped by caps.separation_order.
std::vector<Separation> enumerate_separations(const Graph& g, const VertexSet& host, int theta,
                                              const Caps& caps = default_caps());
std::vector<Separation> enumerate_separations(const Graph& g, int theta, const Caps& caps = default_caps());

// The data a (G, F, r', theta, Z)-tangle was built from, so membership can be re-derived.
struct TangleParameters {
  std::vector<VertexSet> family;
  double r_prime = 0;
  VertexSet z;
};

struct Tangle {
  int order = 1;
  VertexSet host;
  std::vector<Separation> members;  // oriented (A, B); contains() expects ascending order
  std::optional<TangleParameters> parameters;

  bool contains(const Separation& s) const;
};

struct TangleVerdict {
  bool valid = true;
  std::string axiom;  // "member", "T1", "T2" or "T3"
  std::string detail;
  explicit operator bool() const { return valid; }
};

TangleVerdict verify_tangle(const Graph& g, const Tangle& t, const Caps& caps = default_caps());

struct TangleBuild {
  std::optional<Tangle> tangle;
  std::string refusal;  // the violated axiom when no tangle results
  explicit operator bool() const { return tangle.has_value(); }
};

// All (A, B) of order < theta in g[l] where A - N≤r'[V(A∩B)] holds no member of
// F - N≤r'[Z] and B - N≤r'[V(A∩B)] holds one; kept only if the axioms hold.
TangleBuild build_gfrtz_tangle(const Graph& g, const VertexSet& l, const std::vector<VertexSet>& family,
                               double r_prime, int theta, const VertexSet& z, const Caps& caps = default_caps());

// Largest number of members pairwise at distance >= r (stops once `enough` is reached).
std::vector<int> far_member_packing(const Graph& g, const std::vector<VertexSet>& members, double r,
                                    std::size_t enough, const Caps& caps = default_caps());

struct TrichotomyResult {
  int outcome = 0;
  // Outcome 1: Z* with its certificate, and the part outside N≤r'[Z] with its own.
  CenteredSet z_star;
  CenteredSet fresh_part;
  // Outcome 2.
  Separation separation;
  // Outcome 3.
  std::optional<Tangle> tangle;
};

// Outcome 1: a (xi + 3 theta - 3, eta + r')-centered Z* ⊇ N≤r'[Z] meeting every member.
// Outcome 2: a separation of g[l] of order < theta with fewer than k - 1 far members of
// F - N≤r'[Z] on either side. Outcome 3: the tangle. Tried in that order.
TrichotomyResult easy_tangle_trichotomy(const Graph& g, const VertexSet& l, const std::vector<VertexSet>& family,
                                        int k, int theta, double r, double r_prime, const CenteredSet& z, int xi,
                                        double eta, const Caps& caps = default_caps());

struct TanglePart {
  VertexSet h;
  int index = 0;  // i_H
  VertexSet z_h;
  Tangle tangle;  // in g[h], of order theta[index]
};

struct MultifoldResult {
  VertexSet z_star;
  std::vector<TanglePart> parts;
  int splits = 0;
  std::vector<std::string> trace;
};

// 3 theta_1 - 3 + 2 (3 theta_2 - 3 + ... + 3 theta_upto - 3), with theta 1-indexed.
int multifold_budget(const std::vector<int>& thetas, int upto);

// Z* and at most k - 1 tangle-carrying pieces of g[l]. z.centers and z.radius play xi
// and eta (z itself with radius 0 when no centers are given). thetas needs k entries.
MultifoldResult tangle_decompose(const Graph& g, const VertexSet& l, const std::vector<VertexSet>& family, int k,
                                 const std::vector<int>& thetas, double r, double r_prime, const CenteredSet& z,
                                 const Caps& caps = default_caps());

// Every conclusion of the decomposition re-checked; one line per failure.
std::vector<std::string> check_multifold(const Graph& g, const VertexSet& l, const std::vector<VertexSet>& family,
                                         int k, const std::vector<int>& thetas, double r, double r_prime,
                                         const CenteredSet& z, const MultifoldResult& result,
                                         const Caps& caps = default_caps());

}  // namespace coarse_menger
