#include "coarse_menger/serialize.hpp"

#include <cmath>

#include "coarse_menger/io.hpp"

namespace coarse_menger {

json as_json(const Graph& g, const VertexSet& s) { return labels_of(g, s); }

json as_json(const Graph& g, const PathWitness& p) {
  std::vector<Label> seq;
  for (Vertex v : p.sequence) seq.push_back(g.label(v));
  return {{"sequence", seq}, {"endpoint_distance", p.endpoint_distance}};
}

json as_json(const Graph& g, const CenteredSet& c) {
  return {{"set", as_json(g, c.z)}, {"centers", as_json(g, c.centers)}, {"radius", c.radius}};
}

json as_json(const Graph& g, const Separation& s) {
  return {{"a", as_json(g, s.a)}, {"b", as_json(g, s.b)}, {"order", s.order()}};
}

json as_json(const Graph& g, const PackingSolution& s) {
  json paths = json::array();
  for (const auto& p : s.paths) paths.push_back(as_json(g, p));
  double gap = s.certified_min_pairwise_distance;
  return {{"size", s.size()},
          {"optimal", s.optimal},
          {"paths", paths},
          {"min_pairwise_distance", std::isinf(gap) ? json(nullptr) : json(gap)},
          {"method", s.stats.method},
          {"candidate_paths", s.stats.candidate_paths},
          {"lower_bound", s.stats.lower_bound},
          {"upper_bound", s.stats.upper_bound}};
}

json as_json(const Graph& g, const CoverResult& c) {
  return {{"count", c.count()}, {"optimal", c.optimal}, {"certificate", as_json(g, c.certificate)}};
}

json as_json(const DualityReport& r) {
  auto cells = [](const std::vector<DualityCell>& list) {
    json out = json::array();
    for (const auto& c : list)
      out.push_back({{"threshold", c.threshold}, {"value", c.value}, {"exact", c.exact}, {"flag", c.flag}});
    return out;
  };
  return {{"fingerprint", r.fingerprint},
          {"ell", r.ell},
          {"packing", cells(r.packing_by_r)},
          {"cover", cells(r.cover_by_radius)},
          {"capacity_hit", r.capacity_hit()},
          {"weak_duality_violations", weak_duality_violations(r)}};
}

json as_json(const Graph& g, const GallaiVerdict& v) {
  json paths = json::array();
  for (const auto& p : v.paths) paths.push_back(as_json(g, p));
  return {{"branch", v.branch == GallaiVerdict::Branch::packing ? "packing" : "hitting"},
          {"k", v.k},
          {"paths", paths},
          {"hitting_set", as_json(g, v.hitting_set)},
          {"valid", v.valid}};
}

json as_json(const HellyResult& h) {
  return {{"branch", h.packing ? "packing" : "hitting"}, {"disjoint", h.disjoint}, {"hitting", h.hitting.members()}};
}

json as_json(const Graph& g, const EasyTreeResult& r) {
  json members = json::array();
  for (const auto& m : r.members) {
    json parts = json::array();
    for (const auto& c : m) parts.push_back(as_json(g, c));
    members.push_back(parts);
  }
  return {{"branch", r.packing ? "packing" : "hitting"},
          {"members", members},
          {"hitting", as_json(g, r.hitting)},
          {"hitting_nodes", r.hitting_nodes}};
}

json as_json(const Graph& g, const FatMinorModel& m) {
  json branch = json::array();
  for (const auto& b : m.branch_sets) branch.push_back(as_json(g, b));
  json paths = json::array();
  for (const auto& p : m.edge_paths) paths.push_back(as_json(g, p));
  return {{"branch_sets", branch}, {"edge_paths", paths}, {"fatness", m.fatness}};
}

json as_json(const Graph& g, const RootedEpResult& r) {
  json models = json::array();
  for (const auto& m : r.models) models.push_back(as_json(g, m));
  return {{"branch", r.packing ? "packing" : "hitting"},
          {"models", models},
          {"hitting", as_json(g, r.hitting)},
          {"translated_radius", r.translated_radius},
          {"fattening_radius", r.fattening_radius},
          {"bag_size", r.bag_size},
          {"route", r.route}};
}

json as_json(const Graph& g, const Tangle& t) {
  json members = json::array();
  for (const auto& s : t.members) members.push_back({as_json(g, s.a), as_json(g, s.b)});
  json out = {{"order", t.order}, {"host", as_json(g, t.host)}, {"members", members}};
  if (t.parameters) {
    json family = json::array();
    for (const auto& f : t.parameters->family) family.push_back(as_json(g, f));
    out["parameters"] = {{"family", family}, {"r_prime", t.parameters->r_prime}, {"z", as_json(g, t.parameters->z)}};
  }
  return out;
}

json as_json(const Graph& g, const TrichotomyResult& r) {
  json out = {{"outcome", r.outcome}};
  if (r.outcome == 1) {
    out["z_star"] = as_json(g, r.z_star);
    out["fresh_part"] = as_json(g, r.fresh_part);
  } else if (r.outcome == 2) {
    out["separation"] = as_json(g, r.separation);
  } else if (r.outcome == 3 && r.tangle) {
    out["tangle"] = as_json(g, *r.tangle);
  }
  return out;
}

json as_json(const Graph& g, const MultifoldResult& r) {
  json parts = json::array();
  for (const auto& p : r.parts)
    parts.push_back({{"h", as_json(g, p.h)},
                     {"index", p.index},
                     {"z_h", as_json(g, p.z_h)},
                     {"tangle_members", p.tangle.members.size()}});
  return {{"z_star", as_json(g, r.z_star)}, {"parts", parts}, {"splits", r.splits}, {"trace", r.trace}};
}

json as_json(const QuasiIsometryVerdict& v) {
  auto finite = [](double x) { return std::isinf(x) ? json(nullptr) : json(x); };
  return {{"valid", v.valid()},
          {"lower_ok", v.lower_ok},
          {"upper_ok", v.upper_ok},
          {"coverage_ok", v.coverage_ok},
          {"tightest_a", finite(v.tightest_a)},
          {"worst_ratio", finite(v.worst_ratio)},
          {"first_failure", v.first_failure}};
}

json as_json(const Graph& source, const PullbackResult& p) {
  json paths = json::array();
  for (const auto& c : p.collection) paths.push_back(as_json(source, c));
  return {{"z", as_json(source, p.z)},   {"z2", as_json(source, p.z2)},
          {"z3", as_json(source, p.z3)}, {"z4", as_json(source, p.z4)},
          {"collection", paths},         {"ell_double_prime", p.ell_double_prime}};
}

json as_json(const TransferConstants& c) { return {{"c1", c.c1}, {"c2", c.c2}}; }

json as_json(const RemoteChain& c) {
  return {{"r_prime", c.r_prime}, {"ell_prime", c.ell_prime}, {"xi1", c.xi1},
          {"eta1", c.eta1},       {"eta2", c.eta2},           {"eta3", c.eta3},
          {"ell_double_prime", c.ell_double_prime},           {"eta4", c.eta4},
          {"f", c.f_out},         {"g", c.g_out}};
}

json as_json(const RadiusCoefficient& c) {
  return {{"c_h", c.c_h ? json(*c.c_h) : json(nullptr)}, {"half_radius", c.half_radius}, {"rule", c.rule}};
}

json as_json(const InstanceSpec& spec) {
  const Graph& g = spec.graph;
  json notes = json::array();
  for (const auto& a : spec.annotations)
    notes.push_back({{"property", a.property},
                     {"origin", a.origin},
                     {"expected", a.expected},
                     {"verified", a.verified ? json(*a.verified) : json(nullptr)},
                     {"observed", a.observed}});
  json out = {{"family", spec.family},
              {"parameters", spec.parameters},
              {"graph", graph_to_json(g)},
              {"x", as_json(g, spec.x)},
              {"y", as_json(g, spec.y)},
              {"a", as_json(g, spec.a)},
              {"annotations", notes}};
  if (spec.rooted) {
    json roots = json::array();
    for (const auto& r : spec.rooted->roots) roots.push_back(as_json(g, r));
    out["rooted"] = {{"pattern", graph_to_json(spec.rooted->pattern)}, {"roots", roots}, {"ell", spec.rooted->ell}};
  }
  if (spec.decomposition) {
    json bags = json::array();
    for (const auto& b : spec.decomposition->bags) bags.push_back(as_json(g, b));
    json edges = json::array();
    for (const Edge& e : spec.decomposition->tree.edges()) edges.push_back({e.u, e.v});
    out["decomposition"] = {{"bags", bags}, {"tree_edges", edges}};
  }
  return out;
}

QuasiIsometry quasi_isometry_from_json(const Graph& source, const Graph& target, const json& doc) {
  QuasiIsometry q;
  try {
    q.m = doc.at("m").get<double>();
    q.a = doc.at("a").get<double>();
    q.map.assign(static_cast<std::size_t>(source.vertex_count()), -1);
    for (const auto& pair : doc.at("map")) {
      auto from = source.find_label(pair.at(0).get<Label>());
      auto to = target.find_label(pair.at(1).get<Label>());
      if (!from || !to) throw InputError("quasi-isometry map names an unknown vertex");
      q.map[*from] = *to;
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed quasi-isometry: ") + e.what());
  }
  for (Vertex v : q.map)
    if (v < 0) throw InputError("quasi-isometry map is not total");
  return q;
}

json canonical_report(json doc) {
  if (doc.is_object()) {
    json out = json::object();
    for (auto it = doc.begin(); it != doc.end(); ++it)
      if (it.key() != "seconds" && it.key() != "timestamp") out[it.key()] = canonical_report(it.value());
    return out;
  }
  if (doc.is_array())
    for (auto& item : doc) item = canonical_report(item);
  return doc;
}

}  // namespace coarse_menger
