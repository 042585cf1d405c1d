#include "coarse_menger/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coarse_menger/covering.hpp"

namespace coarse_menger {

QuasiIsometryVerdict verify_quasi_isometry(const Graph& source, const Graph& target, const QuasiIsometry& q) {
  const int n = source.vertex_count();
  if (static_cast<int>(q.map.size()) != n) throw InputError("quasi-isometry map must cover every source vertex");
  for (Vertex y : q.map) target.require_vertex(y);
  if (q.m < 1 || q.a < 0) throw InputError("quasi-isometry needs m >= 1 and a >= 0");
  QuasiIsometryVerdict v;
  auto note = [&](const std::string& what) {
    if (v.first_failure.empty()) v.first_failure = what;
  };
  for (Vertex s = 0; s < n; ++s) {
    auto row = source.distances_from(s);
    auto image_row = target.distances_from(q.map[s]);
    for (Vertex t = s + 1; t < n; ++t) {
      double dx = row[t];
      double dy = image_row[q.map[t]];
      std::string pair = std::to_string(s) + "," + std::to_string(t);
      if (std::isinf(dx) || std::isinf(dy)) {
        if (std::isinf(dx) && std::isinf(dy)) continue;
        v.tightest_a = kInfinity;
        v.worst_ratio = kInfinity;
        if (std::isinf(dx)) {
          v.lower_ok = false;
          note("lower bound at " + pair);
        } else {
          v.upper_ok = false;
          note("upper bound at " + pair);
        }
        continue;
      }
      v.tightest_a = std::max({v.tightest_a, dx / q.m - dy, dy - q.m * dx});
      if (dx > 0) v.worst_ratio = std::max({v.worst_ratio, dy / dx, dy > 0 ? dx / dy : kInfinity});
      if (!within(dx / q.m - q.a, dy)) {
        v.lower_ok = false;
        note("lower bound at " + pair);
      }
      if (!within(dy, q.m * dx + q.a)) {
        v.upper_ok = false;
        note("upper bound at " + pair);
      }
    }
  }
  auto reach = distance_to_set(target, VertexSet(q.map));
  for (Vertex y = 0; y < target.vertex_count(); ++y) {
    v.tightest_a = std::max(v.tightest_a, reach[y]);
    if (!within(reach[y], q.a)) {
      v.coverage_ok = false;
      note("coverage at target vertex " + std::to_string(y));
    }
  }
  return v;
}

TransferConstants transfer_constants(double m, double a) {
  if (m < 1 || a < 0) throw InputError("transfer constants need m >= 1 and a >= 0");
  return {2 * m * m * (3 * a + 1) + 2 * m + 3 * a, (m + 8 * a + 1) * m + 2};
}

WitnessFunctions constant_witness(double f, double g) {
  std::ostringstream text;
  text << "(" << f << ", " << g << ")";
  return {[f](int, double, double) { return f; }, [g](int, double, double) { return g; }, text.str()};
}

const char* to_string(TransferVariant v) {
  switch (v) {
    case TransferVariant::menger: return "menger";
    case TransferVariant::remote: return "remote";
    case TransferVariant::gallai: return "gallai";
  }
  return "?";
}

RemoteChain remote_chain(double m, double a, const WitnessFunctions& w, int k, double r, double ell) {
  if (m < 1 || a < 0) throw InputError("transfer needs m >= 1 and a >= 0");
  RemoteChain c;
  c.r_prime = 2 * m * m * (3 * a + 1) + (2 + r) * m + 3 * a;
  c.ell_prime = m * ell + 3 * a;
  c.xi1 = w.f(k, c.r_prime, c.ell_prime);
  c.eta1 = w.g(k, c.r_prime, c.ell_prime);
  c.eta2 = m * (2 * c.eta1 + 3 * a);
  c.eta3 = c.eta2 + m * (m + 2 * a + 1);
  c.ell_double_prime = (c.ell_prime + a) * m;
  c.eta4 = 2 * c.ell_double_prime + 2 + r;
  c.f_out = c.xi1 + k - 1;
  c.g_out = std::max(c.eta3, c.eta4);
  return c;
}

WitnessFunctions transfer_witness(double m, double a, const WitnessFunctions& w, TransferVariant variant) {
  auto constants = transfer_constants(m, a);
  std::ostringstream tag;
  tag << to_string(variant) << "[m=" << m << ",a=" << a << "] of " << w.provenance;
  WitnessFunctions out;
  out.provenance = tag.str();
  switch (variant) {
    case TransferVariant::remote:
      out.f = [=](int k, double r, double ell) { return remote_chain(m, a, w, k, r, ell).f_out; };
      out.g = [=](int k, double r, double ell) { return remote_chain(m, a, w, k, r, ell).g_out; };
      break;
    case TransferVariant::menger:
      out.f = [=](int k, double r, double) { return remote_chain(m, a, w, k, r, 0).f_out; };
      out.g = [=](int k, double r, double) { return remote_chain(m, a, w, k, r, 0).g_out; };
      break;
    case TransferVariant::gallai:
      out.f = [=](int k, double r, double ell) { return w.f(k, m * r + constants.c1, ell); };
      out.g = [=](int k, double r, double ell) { return 2 * m * w.g(k, m * r + constants.c1, ell) + constants.c2; };
      break;
  }
  return out;
}

WitnessFunctions scale_witness(const WitnessFunctions& w, TransferVariant variant) {
  WitnessFunctions out;
  out.provenance = std::string("scaled ") + to_string(variant) + " of " + w.provenance;
  if (variant == TransferVariant::remote) {
    out.f = [=](int k, double r, double ell) { return w.f(k, 1, ell / r); };
    out.g = [=](int k, double r, double ell) { return w.g(k, 1, ell / r) * r; };
  } else {
    out.f = [=](int k, double, double ell) { return w.f(k, 1, ell); };
    out.g = [=](int k, double r, double ell) { return w.g(k, 1, ell) * r; };
  }
  return out;
}

Graph scale_metric(const Graph& g, double lambda) {
  if (!(lambda > 0)) throw InputError("scale factor must be positive");
  if (lambda == 1) return g;
  Graph out = Graph::with_labels(g.labels());
  for (const Edge& e : g.edges()) out.add_edge(e.u, e.v, e.weight * lambda);
  return out;
}

namespace {

Label next_label(const Graph& g) {
  Label top = -1;
  for (Label l : g.labels()) top = std::max(top, l);
  return top + 1;
}

}  // namespace

Graph subdivide_to_unit(const Graph& g) {
  bool long_edge = std::any_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.weight > 1; });
  if (!long_edge) return g;
  Graph out = Graph::with_labels(g.labels());
  Label fresh = next_label(g);
  for (const Edge& e : g.edges()) {
    const double pieces = std::ceil(e.weight);
    if (pieces <= 1) {
      out.add_edge(e.u, e.v, e.weight);
      continue;
    }
    const double step = e.weight / pieces;
    Vertex prev = e.u;
    for (int i = 1; i < static_cast<int>(pieces); ++i) {
      Vertex mid = out.add_vertex(fresh++);
      out.add_edge(prev, mid, step);
      prev = mid;
    }
    out.add_edge(prev, e.v, step);
  }
  return out;
}

Subdivision one_subdivision(const Graph& g) {
  if (g.is_weighted()) throw InputError("the 1-subdivision is defined for unweighted graphs");
  Subdivision s;
  s.graph = Graph::with_labels(g.labels());
  Label fresh = next_label(g);
  for (const Edge& e : g.edges()) {
    Vertex mid = s.graph.add_vertex(fresh++);
    s.graph.add_edge(e.u, mid);
    s.graph.add_edge(mid, e.v);
  }
  s.inclusion.map.resize(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) s.inclusion.map[v] = v;
  s.inclusion.m = 2;
  s.inclusion.a = 1;
  return s;
}

PullbackResult pullback_hitting_set(const Graph& source, const Graph& target, const QuasiIsometry& q,
                                    const VertexSet& z_target, double r, double ell, const VertexSet& a,
                                    const VertexSet& b, const Caps& caps) {
  source.require_subset(a);
  source.require_subset(b);
  target.require_subset(z_target);
  if (!(r > 0) || ell < 0) throw InputError("pullback needs r > 0 and ell >= 0");
  for (const Graph* h : {&source, &target})
    for (const Edge& e : h->edges())
      if (e.weight > 1 + kTolerance) throw PreconditionError("unit-weights", "edge lengths must lie in (0, 1]");
  if (auto verdict = verify_quasi_isometry(source, target, q); !verdict)
    throw PreconditionError("quasi-isometry", verdict.first_failure);
  if (source.vertex_count() > caps.path_enumeration_vertices)
    throw CapacityError("pullback path search is limited to " + std::to_string(caps.path_enumeration_vertices) +
                        " source vertices");

  const double m = q.m;
  const double ell_prime = m * ell + 3 * q.a;
  std::vector<Vertex> image_a, image_b;
  for (Vertex v : a) image_a.push_back(q.map[v]);
  for (Vertex v : b) image_b.push_back(q.map[v]);
  if (!hits_family(target, LxyFamily{ell_prime, VertexSet(image_a), VertexSet(image_b)}, z_target))
    throw PreconditionError("target-hitting", "Z misses some (m ell + 3a, ι(A), ι(B))-path of the target");

  PullbackResult out;
  out.ell_double_prime = (ell_prime + q.a) * m;
  std::vector<Vertex> reps;
  for (Vertex y : z_target) {
    Vertex best = 0;
    double best_d = kInfinity;
    for (Vertex x = 0; x < source.vertex_count(); ++x) {
      double d = target.distance(q.map[x], y);
      if (d < best_d - kTolerance) {
        best_d = d;
        best = x;
      }
    }
    reps.push_back(best);
  }
  out.z2 = VertexSet(reps);
  out.z3 = out.z2.empty() ? VertexSet{} : neighborhood(source, out.z2, m * (m + 2 * q.a + 1));

  const double ceiling = out.ell_double_prime;
  PathSearch spec;
  spec.start_ok = [&](Vertex s) { return a.contains(s) || b.contains(s); };
  spec.accept = [&](Vertex s, Vertex t) {
    bool ends = (a.contains(s) && b.contains(t)) || (b.contains(s) && a.contains(t));
    double d = source.distance(s, t);
    return ends && at_least(d, ell) && d < ceiling - kTolerance;
  };
  spec.extend_ok = [&](const std::vector<Vertex>&, double length) { return within(length, ceiling + 1); };
  bool truncated = false;
  auto sequences = search_paths(source, spec, caps.max_paths + 1, caps.search_nodes, truncated);
  if (truncated) throw CapacityError("pullback path search exceeded " + std::to_string(caps.max_paths) + " paths");
  std::vector<PathWitness> candidates;
  for (auto& seq : sequences) {
    PathWitness p = make_path(source, std::move(seq));
    if (within(path_length(source, p), p.endpoint_distance + 1)) candidates.push_back(canonical(std::move(p)));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const PathWitness& x, const PathWitness& y) { return x.sequence < y.sequence; });
  VertexSet used;
  for (auto& p : candidates) {
    VertexSet vs = p.vertex_set();
    bool far = std::all_of(out.collection.begin(), out.collection.end(), [&](const PathWitness& c) {
      return at_least(set_distance(source, vs, c.vertex_set()), r);
    });
    if (!far) continue;
    out.collection.push_back(p);
    used = set_union(used, vs);
  }
  out.z4 = used.empty() ? VertexSet{} : neighborhood(source, used, r + out.ell_double_prime + 1);
  out.z = set_union(out.z3, out.z4);
  if (!hits_family(source, LxyFamily{ell, a, b}, out.z))
    throw InternalInconsistency("pullback set misses an (ell, A, B)-path of the source");
  return out;
}

RadiusCoefficient c_h_ledger(const ExcludedMinorDescriptor& d) {
  if (!d.special.empty() && d.special != "linkless" && d.special != "knotless")
    throw InputError("unknown excluded-minor class '" + d.special + "'");
  if (!d.special.empty() && (d.planar || d.apex))
    throw InputError("linkless and knotless classes exclude non-apex, non-planar minors");
  if (d.genus && *d.genus < 0) throw InputError("genus must be nonnegative");
  auto need_genus = [&]() {
    if (!d.genus) throw InputError("this class needs its genus parameter");
    return *d.genus;
  };
  RadiusCoefficient out;
  if (d.special == "linkless") {
    out.c_h = d.finite_host ? 22 : 60;
    out.rule = d.finite_host ? "linkless, finite host" : "linkless, locally finite host";
    return out;
  }
  if (d.special == "knotless") {
    out.c_h = d.finite_host ? 30 : 68;
    out.rule = d.finite_host ? "knotless, finite host" : "knotless, locally finite host";
    return out;
  }
  if (d.finite_host && d.planar) {
    out.half_radius = true;
    out.rule = "planar minor, finite host: radius r/2";
    return out;
  }
  if (d.finite_host && d.apex) {
    out.c_h = 14;
    out.rule = "apex minor, finite host";
    return out;
  }
  if (d.finite_host) {
    out.c_h = 4 * need_genus() + 22;
    out.rule = "non-planar minor, finite host: 4 gamma + 22";
    return out;
  }
  out.c_h = 8 * need_genus() + 44;
  out.rule = "locally finite host: 8 gamma + 44";
  return out;
}

}  // namespace coarse_menger
