#include "coarse_menger/covering.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <sstream>

#include "coarse_menger/io.hpp"
#include "coarse_menger/packing.hpp"
#include "coarse_menger/search.hpp"

namespace coarse_menger {

namespace {

std::vector<char> open_mask(const std::vector<char>& blocked) {
  std::vector<char> open(blocked.size());
  for (std::size_t v = 0; v < blocked.size(); ++v) open[v] = !blocked[v];
  return open;
}

std::vector<int> component_ids(const Graph& g, const std::vector<char>& open) {
  std::vector<int> id(static_cast<std::size_t>(g.vertex_count()), -1);
  int next = 0;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (!open[s] || id[s] >= 0) continue;
    std::vector<Vertex> queue{s};
    id[s] = next;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const Arc& a : g.neighbors(queue[i]))
        if (open[a.to] && id[a.to] < 0) {
          id[a.to] = next;
          queue.push_back(a.to);
        }
    ++next;
  }
  return id;
}

class LxyOracle : public ImplicitFamily {
 public:
  LxyOracle(const Graph& g, const LxyFamily& f) : g_(g), f_(f) {}

  std::optional<VertexSet> unhit_member(const std::vector<char>& blocked) const override {
    auto open = open_mask(blocked);
    std::size_t best_len = 0;
    std::vector<Vertex> best;
    for (Vertex a : f_.x) {
      if (!open[a]) continue;
      auto hops = shortest_distances(hop_graph(), {a}, open);
      for (Vertex b : f_.y) {
        if (!open[b] || hops[b] == kInfinity || !eligible(a, b)) continue;
        if (best.empty() || hops[b] + 1 < static_cast<double>(best_len)) {
          best = shortest_hop_path(g_, a, b, open);
          best_len = best.size();
        }
      }
    }
    if (best.empty()) return std::nullopt;
    return VertexSet(best);
  }

  std::size_t residual(const std::vector<char>& blocked) const override {
    auto id = component_ids(g_, open_mask(blocked));
    std::size_t count = 0;
    for (Vertex a : f_.x)
      for (Vertex b : f_.y)
        if (id[a] >= 0 && id[a] == id[b] && eligible(a, b)) ++count;
    return count;
  }

 private:
  bool eligible(Vertex a, Vertex b) const { return at_least(g_.distance(a, b), f_.ell); }
  // Hop counts ignore weights, so search an unweighted copy of the host.
  const Graph& hop_graph() const {
    if (!g_.is_weighted()) return g_;
    if (!unit_) {
      unit_ = std::make_shared<Graph>(g_.vertex_count());
      for (const Edge& e : g_.edges()) unit_->add_edge(e.u, e.v);
    }
    return *unit_;
  }

  const Graph& g_;
  LxyFamily f_;
  mutable std::shared_ptr<Graph> unit_;
};

class APathOracle : public ImplicitFamily {
 public:
  APathOracle(const Graph& g, const APathFamily& f) : g_(g), a_(f.a) {}

  std::optional<VertexSet> unhit_member(const std::vector<char>& blocked) const override {
    auto open = open_mask(blocked);
    std::vector<Vertex> best;
    for (Vertex s : a_) {
      if (!open[s]) continue;
      for (Vertex t : a_) {
        if (t <= s || !open[t]) continue;
        auto p = shortest_hop_path(g_, s, t, open);
        if (!p.empty() && (best.empty() || p.size() < best.size())) best = std::move(p);
      }
    }
    if (best.empty()) return std::nullopt;
    return VertexSet(best);
  }

  std::size_t residual(const std::vector<char>& blocked) const override {
    auto id = component_ids(g_, open_mask(blocked));
    std::size_t count = 0;
    for (Vertex s : a_)
      for (Vertex t : a_)
        if (s < t && id[s] >= 0 && id[s] == id[t]) ++count;
    return count;
  }

 private:
  const Graph& g_;
  VertexSet a_;
};

void validate(const Graph& g, const PathFamily& family) {
  if (auto* f = std::get_if<LxyFamily>(&family)) {
    g.require_subset(f->x);
    g.require_subset(f->y);
  } else if (auto* f = std::get_if<APathFamily>(&family)) {
    g.require_subset(f->a);
  } else {
    for (const auto& m : std::get<std::vector<VertexSet>>(family)) {
      if (m.empty()) throw InputError("family contains an empty member");
      g.require_subset(m);
    }
  }
}

std::unique_ptr<ImplicitFamily> oracle_for(const Graph& g, const PathFamily& family) {
  if (auto* f = std::get_if<LxyFamily>(&family)) return std::make_unique<LxyOracle>(g, *f);
  if (auto* f = std::get_if<APathFamily>(&family)) return std::make_unique<APathOracle>(g, *f);
  return nullptr;
}

}  // namespace

bool hits_family(const Graph& g, const PathFamily& family, const VertexSet& z) {
  validate(g, family);
  g.require_subset(z);
  if (auto oracle = oracle_for(g, family)) return !oracle->unhit_member(z.mask(g.vertex_count()));
  for (const auto& m : std::get<std::vector<VertexSet>>(family))
    if (!intersects(m, z)) return false;
  return true;
}

CoverResult min_ball_hitting(const Graph& g, const PathFamily& family, double radius, SearchMode mode,
                             const Caps& caps) {
  validate(g, family);
  if (radius < 0) throw InputError("negative ball radius");
  BallCoverResult found;
  if (auto oracle = oracle_for(g, family)) {
    found = mode == SearchMode::exact ? exact_ball_cover(g, radius, *oracle, caps.search_nodes)
                                      : greedy_ball_cover(g, radius, *oracle);
  } else {
    const auto& members = std::get<std::vector<VertexSet>>(family);
    if (!members.empty())
      found = mode == SearchMode::exact ? exact_ball_cover(g, radius, members, caps.search_nodes)
                                        : greedy_ball_cover(g, radius, members);
    else
      found.optimal = true;
  }
  CoverResult out;
  out.certificate = ball_union(g, found.centers, radius);
  out.optimal = found.optimal;
  out.nodes = found.nodes;
  return out;
}

CoverResult min_ball_hitting(const CoverInstance& inst, const Caps& caps) {
  return min_ball_hitting(inst.host, inst.family, inst.radius, inst.mode, caps);
}

bool DualityReport::capacity_hit() const {
  auto capped = [](const DualityCell& c) { return !c.exact; };
  return std::any_of(packing_by_r.begin(), packing_by_r.end(), capped) ||
         std::any_of(cover_by_radius.begin(), cover_by_radius.end(), capped);
}

std::string instance_fingerprint(const Graph& g, const VertexSet& x, const VertexSet& y, double ell) {
  std::ostringstream text;
  text << format_edge_list(g) << "|X";
  for (Label l : labels_of(g, x)) text << ' ' << l;
  text << "|Y";
  for (Label l : labels_of(g, y)) text << ' ' << l;
  char buf[40];
  std::snprintf(buf, sizeof buf, "|%.17g", ell);
  text << buf;
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : text.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

DualityReport duality_sweep(const Graph& g, const VertexSet& x, const VertexSet& y, double ell,
                            const std::vector<double>& r_values, const std::vector<double>& beta_values,
                            const Caps& caps) {
  DualityReport report;
  report.fingerprint = instance_fingerprint(g, x, y, ell);
  report.ell = ell;
  for (double r : r_values) {
    DualityCell cell{r};
    try {
      auto sol = max_far_packing(g, x, y, ell, r, SearchMode::exact, caps);
      cell.value = sol.size();
      cell.exact = sol.optimal;
    } catch (const CapacityError&) {
      cell.value = max_far_packing(g, x, y, ell, r, SearchMode::greedy, caps).size();
      cell.flag = "capacity";
    }
    report.packing_by_r.push_back(cell);
  }
  LxyFamily family{ell, x, y};
  for (double beta : beta_values) {
    DualityCell cell{beta};
    try {
      auto cover = min_ball_hitting(g, family, beta, SearchMode::exact, caps);
      cell.value = cover.count();
      cell.exact = cover.optimal;
    } catch (const CapacityError&) {
      cell.value = min_ball_hitting(g, family, beta, SearchMode::greedy, caps).count();
      cell.flag = "capacity";
    }
    report.cover_by_radius.push_back(cell);
  }
  return report;
}

std::vector<std::string> weak_duality_violations(const DualityReport& report) {
  std::vector<std::string> out;
  for (const auto& p : report.packing_by_r)
    for (const auto& c : report.cover_by_radius) {
      if (!p.exact || !c.exact || !(p.threshold > 2 * c.threshold + kTolerance)) continue;
      if (c.value < p.value)
        out.push_back("r=" + std::to_string(p.threshold) + " packing " + std::to_string(p.value) + " > beta=" +
                      std::to_string(c.threshold) + " cover " + std::to_string(c.value));
    }
  return out;
}

std::string to_csv(const DualityReport& report) {
  std::ostringstream out;
  out << "kind,threshold,value,exact,flag\n";
  auto rows = [&](const char* kind, const std::vector<DualityCell>& cells) {
    for (const auto& c : cells) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", c.threshold);
      out << kind << ',' << buf << ',' << c.value << ',' << (c.exact ? "true" : "false") << ',' << c.flag << '\n';
    }
  };
  rows("packing", report.packing_by_r);
  rows("cover", report.cover_by_radius);
  return out.str();
}

GallaiVerdict gallai_check(const Graph& g, const VertexSet& a, int k, const Caps& caps) {
  if (k < 0) throw InputError("negative k");
  GallaiVerdict v;
  v.k = k;
  auto packing = gallai_packing(g, a, caps);
  if (static_cast<int>(packing.size()) >= k) {
    v.branch = GallaiVerdict::Branch::packing;
    v.paths.assign(packing.paths.begin(), packing.paths.begin() + k);
    bool ok = true;
    for (std::size_t i = 0; i < v.paths.size(); ++i) {
      ok = ok && is_a_path(g, v.paths[i], a);
      for (std::size_t j = i + 1; j < v.paths.size(); ++j)
        ok = ok && !intersects(v.paths[i].vertex_set(), v.paths[j].vertex_set());
    }
    v.valid = ok;
    return v;
  }
  v.branch = GallaiVerdict::Branch::hitting;
  APathFamily family{a};
  auto cover = min_ball_hitting(g, family, 0, SearchMode::exact, caps);
  v.hitting_set = cover.certificate.z;
  v.valid = cover.optimal && static_cast<int>(v.hitting_set.size()) <= 2 * k - 2 && hits_family(g, family, v.hitting_set);
  return v;
}

}  // namespace coarse_menger
