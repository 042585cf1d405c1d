#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarse_menger/caps.hpp"
#include "coarse_menger/graph.hpp"
#include "coarse_menger/paths.hpp"

namespace coarse_menger {

// map[x] is the image of source vertex x.
struct QuasiIsometry {
  std::vector<Vertex> map;
  double m = 1;
  double a = 0;
};

struct QuasiIsometryVerdict {
  bool lower_ok = true;
  bool upper_ok = true;
  bool coverage_ok = true;
  // Smallest additive constant that works for the given m (over both distortion
  // bounds and the density of the image).
  double tightest_a = 0;
  // Largest ratio max(d_Y / d_X, d_X / d_Y) over source pairs at positive distance.
  double worst_ratio = 1;
  std::string first_failure;
  bool valid() const { return lower_ok && upper_ok && coverage_ok; }
  explicit operator bool() const { return valid(); }
};

// Exhaustive over all source pairs and target vertices.
QuasiIsometryVerdict verify_quasi_isometry(const Graph& source, const Graph& target, const QuasiIsometry& q);

struct TransferConstants {
  double c1 = 0;
  double c2 = 0;
};

// c1 = 2 m^2 (3a + 1) + 2m + 3a and c2 = (m + 8a + 1) m + 2.
TransferConstants transfer_constants(double m, double a);

// Evaluable witness pair (count bound f, radius bound g) with a readable formula.
struct WitnessFunctions {
  std::function<double(int k, double r, double ell)> f;
  std::function<double(int k, double r, double ell)> g;
  std::string provenance;
};

WitnessFunctions constant_witness(double f, double g);

enum class TransferVariant { menger, remote, gallai };
const char* to_string(TransferVariant v);

// Every intermediate of the remote composition at one (k, r, ell).
struct RemoteChain {
  double r_prime = 0;
  double ell_prime = 0;
  double xi1 = 0;
  double eta1 = 0;
  double eta2 = 0;
  double eta3 = 0;
  double ell_double_prime = 0;
  double eta4 = 0;
  double f_out = 0;
  double g_out = 0;
};

RemoteChain remote_chain(double m, double a, const WitnessFunctions& w, int k, double r, double ell);

// Witness for the source given one for the target of an (m, a)-quasi-isometry.
// remote: (xi1 + k - 1, max(eta3, eta4)); menger: remote at ell = 0;
// gallai: (f(k, m r + c1), 2 m g(k, m r + c1) + c2).
WitnessFunctions transfer_witness(double m, double a, const WitnessFunctions& w, TransferVariant variant);

// Witness after rescaling the metric so that r becomes 1.
// remote: (f(k, 1, ell / r), g(k, 1, ell / r) r); others: (f(k, 1, ell), g(k, 1, ell) r).
WitnessFunctions scale_witness(const WitnessFunctions& w, TransferVariant variant);

// Every edge length multiplied by lambda > 0.
Graph scale_metric(const Graph& g, double lambda);

// Edges of length w > 1 become ceil(w) edges of length w / ceil(w); original
// vertices keep their ids and labels, new ones are appended.
Graph subdivide_to_unit(const Graph& g);

// Each edge replaced by a path of two unit edges, with the (2, 1)-quasi-isometric inclusion.
struct Subdivision {
  Graph graph;
  QuasiIsometry inclusion;
};
Subdivision one_subdivision(const Graph& g);

struct PullbackResult {
  VertexSet z;   // z3 ∪ z4
  VertexSet z2;  // preimage representatives
  VertexSet z3;
  VertexSet z4;
  std::vector<PathWitness> collection;  // the maximal far collection of short near-geodesic paths
  double ell_double_prime = 0;
};

// Carries a set meeting every (m ell + 3a, ι(A), ι(B))-path of the target back to one
// meeting every (ell, A, B)-path of the source. Both graphs need edge lengths in (0, 1].
PullbackResult pullback_hitting_set(const Graph& source, const Graph& target, const QuasiIsometry& q,
                                    const VertexSet& z_target, double r, double ell, const VertexSet& a,
                                    const VertexSet& b, const Caps& caps = default_caps());

// The radius coefficient promised for H-minor-free hosts.
struct ExcludedMinorDescriptor {
  bool finite_host = true;
  bool planar = false;
  bool apex = false;
  std::optional<int> genus;  // the genus parameter of the matching rule
  std::string special;       // "", "linkless" or "knotless"
};

struct RadiusCoefficient {
  std::optional<int> c_h;     // absent when the radius is r / 2 outright
  bool half_radius = false;  // the bound c_H r + ell becomes r / 2
  std::string rule;
};

RadiusCoefficient c_h_ledger(const ExcludedMinorDescriptor& d);

}  // namespace coarse_menger
