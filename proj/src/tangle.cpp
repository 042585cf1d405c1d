#include "coarse_menger/tangle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>

#include "coarse_menger/search.hpp"

namespace coarse_menger {

namespace {

constexpr int kMaxAssignedComponents = 20;

std::string show(const VertexSet& s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (Vertex v : s) {
    if (!first) out << ',';
    out << v;
    first = false;
  }
  out << '}';
  return out.str();
}

std::string show(const Separation& s) { return "(" + show(s.a) + ", " + show(s.b) + ")"; }

void validate_family(const Graph& g, const VertexSet& l, const std::vector<VertexSet>& family) {
  g.require_subset(l);
  for (const auto& f : family) {
    if (f.empty()) throw InputError("family member is empty");
    if (!is_subset(f, l)) throw InputError("family member " + show(f) + " leaves the subgraph");
    if (!is_connected(g, f)) throw InputError("family member " + show(f) + " is not connected");
  }
}

std::vector<VertexSet> avoiding(const std::vector<VertexSet>& family, const VertexSet& blocked) {
  std::vector<VertexSet> out;
  for (const auto& f : family)
    if (!intersects(f, blocked)) out.push_back(f);
  return out;
}

std::vector<VertexSet> inside(const std::vector<VertexSet>& family, const VertexSet& region) {
  std::vector<VertexSet> out;
  for (const auto& f : family)
    if (is_subset(f, region)) out.push_back(f);
  return out;
}

// Members of `family` inside side - N≤r'[separator].
std::vector<VertexSet> side_members(const Graph& g, const std::vector<VertexSet>& family, const VertexSet& side,
                                    const VertexSet& separator, double r_prime) {
  return inside(family, set_difference(side, neighborhood(g, separator, r_prime)));
}

bool holds_member(const Graph& g, const std::vector<VertexSet>& family, const VertexSet& side,
                  const VertexSet& separator, double r_prime) {
  VertexSet region = set_difference(side, neighborhood(g, separator, r_prime));
  return std::any_of(family.begin(), family.end(), [&](const VertexSet& f) { return is_subset(f, region); });
}

void for_each_subset(const std::vector<Vertex>& pool, int size, const std::function<void(const VertexSet&)>& fn) {
  std::vector<Vertex> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(pick.size()) == size) {
      fn(VertexSet(pick));
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      pick.push_back(pool[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

Separation flipped(const Separation& s) { return Separation{s.b, s.a}; }

// Vertices and edges of g[host] as bit positions, for the T2 union test.
struct SideMasks {
  std::size_t words = 0;
  std::vector<std::uint64_t> full;
  std::vector<std::uint64_t> flat;

  SideMasks(const Graph& g, const VertexSet& host, const std::vector<Separation>& members) {
    std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < host.size(); ++i) local[host[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (const Edge& e : g.edges())
      if (local[e.u] >= 0 && local[e.v] >= 0) edges.emplace_back(local[e.u], local[e.v]);
    const std::size_t bits = host.size() + edges.size();
    words = std::max<std::size_t>(1, (bits + 63) / 64);
    full.assign(words, 0);
    for (std::size_t b = 0; b < bits; ++b) full[b / 64] |= std::uint64_t{1} << (b % 64);
    flat.assign(words * members.size(), 0);
    for (std::size_t m = 0; m < members.size(); ++m) {
      std::vector<char> in(host.size(), 0);
      std::uint64_t* row = &flat[m * words];
      for (Vertex v : members[m].a) {
        in[static_cast<std::size_t>(local[v])] = 1;
        row[local[v] / 64] |= std::uint64_t{1} << (local[v] % 64);
      }
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (in[edges[e].first] && in[edges[e].second]) {
          std::size_t b = host.size() + e;
          row[b / 64] |= std::uint64_t{1} << (b % 64);
        }
    }
  }

  bool covers(std::size_t i, std::size_t j, std::size_t k) const {
    for (std::size_t w = 0; w < words; ++w)
      if ((flat[i * words + w] | flat[j * words + w] | flat[k * words + w]) != full[w]) return false;
    return true;
  }
};

}  // namespace

std::vector<Separation> enumerate_separations(const Graph& g, const VertexSet& host, int theta, const Caps& caps) {
  g.require_subset(host);
  if (theta <= 0) return {};
  if (theta > caps.separation_order)
    throw CapacityError("separation order " + std::to_string(theta) + " exceeds the cap of " +
                        std::to_string(caps.separation_order));
  if (theta >= 2 && static_cast<int>(host.size()) > caps.separation_vertices)
    throw CapacityError("separation enumeration on " + std::to_string(host.size()) + " vertices exceeds the cap of " +
                        std::to_string(caps.separation_vertices));
  std::set<Separation> found;
  const int largest = std::min<int>(theta - 1, static_cast<int>(host.size()));
  for (int size = 0; size <= largest; ++size) {
    for_each_subset(host.members(), size, [&](const VertexSet& sep) {
      auto comps = components(g, set_difference(host, sep));
      if (static_cast<int>(comps.size()) > kMaxAssignedComponents)
        throw CapacityError("separator " + show(sep) + " leaves too many components to assign");
      const std::uint64_t assignments = std::uint64_t{1} << comps.size();
      for (std::uint64_t mask = 0; mask < assignments; ++mask) {
        VertexSet a = sep;
        VertexSet b = sep;
        for (std::size_t c = 0; c < comps.size(); ++c) {
          VertexSet& side = (mask >> c & 1) ? a : b;
          side = set_union(side, comps[c]);
        }
        if (b < a) std::swap(a, b);
        found.insert(Separation{std::move(a), std::move(b)});
      }
    });
  }
  return {found.begin(), found.end()};
}

std::vector<Separation> enumerate_separations(const Graph& g, int theta, const Caps& caps) {
  return enumerate_separations(g, g.vertices(), theta, caps);
}

bool Tangle::contains(const Separation& s) const { return std::binary_search(members.begin(), members.end(), s); }

TangleVerdict verify_tangle(const Graph& g, const Tangle& given, const Caps& caps) {
  auto fail = [](std::string axiom, std::string detail) { return TangleVerdict{false, std::move(axiom), std::move(detail)}; };
  Tangle t = given;
  std::sort(t.members.begin(), t.members.end());
  t.members.erase(std::unique(t.members.begin(), t.members.end()), t.members.end());
  for (const auto& m : t.members) {
    if (!is_separation(g, t.host, m)) return fail("member", show(m) + " is not a separation");
    if (m.order() >= t.order) return fail("member", show(m) + " has order " + std::to_string(m.order()));
  }
  for (const auto& s : enumerate_separations(g, t.host, t.order, caps)) {
    bool forward = t.contains(s);
    bool backward = t.contains(flipped(s));
    if (!forward && !backward) return fail("T1", show(s) + " is not oriented");
    if (forward && backward && s.a != s.b) return fail("T1", show(s) + " is oriented both ways");
  }
  for (const auto& m : t.members)
    if (m.a == t.host) return fail("T3", show(m) + " has V(A) = V(G)");
  SideMasks masks(g, t.host, t.members);
  const std::size_t count = t.members.size();
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i; j < count; ++j)
      for (std::size_t k = j; k < count; ++k)
        if (masks.covers(i, j, k))
          return fail("T2", "A-sides of " + show(t.members[i]) + ", " + show(t.members[j]) + ", " +
                                show(t.members[k]) + " cover the graph");
  return {};
}

TangleBuild build_gfrtz_tangle(const Graph& g, const VertexSet& l, const std::vector<VertexSet>& family,
                               double r_prime, int theta, const VertexSet& z, const Caps& caps) {
  validate_family(g, l, family);
  g.require_subset(z);
  if (theta < 1) throw InputError("tangle order must be at least 1");
  auto remaining = avoiding(family, neighborhood(g, z, r_prime));
  Tangle t;
  t.order = theta;
  t.host = l;
  t.parameters = TangleParameters{family, r_prime, z};
  for (const auto& s : enumerate_separations(g, l, theta, caps)) {
    VertexSet sep = s.separator();
    bool in_a = holds_member(g, remaining, s.a, sep, r_prime);
    bool in_b = holds_member(g, remaining, s.b, sep, r_prime);
    if (!in_a && in_b) t.members.push_back(s);
    if (in_a && !in_b) t.members.push_back(flipped(s));
  }
  std::sort(t.members.begin(), t.members.end());
  TangleBuild out;
  auto verdict = verify_tangle(g, t, caps);
  if (verdict) out.tangle = std::move(t);
  else out.refusal = verdict.axiom;
  return out;
}

std::vector<int> far_member_packing(const Graph& g, const std::vector<VertexSet>& members, double r,
                                    std::size_t enough, const Caps& caps) {
  const std::size_t m = members.size();
  if (m == 0 || enough == 0) return {};
  std::vector<Bits> conflicts(m, Bits(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (!at_least(set_distance(g, members[i], members[j]), r)) {
        conflicts[i].set(j);
        conflicts[j].set(i);
      }
  auto best = maximum_independent_set(conflicts, std::min(enough, m), caps.search_nodes);
  if (!best.optimal && best.members.size() < enough)
    throw CapacityError("far-member packing exceeded its node budget");
  return best.members;
}

namespace {

// The (r, r')-consistency and centering hypotheses shared by the trichotomy and its multifold.
CenteredSet checked_boundary_set(const Graph& g, const VertexSet& l, double r, double r_prime, const CenteredSet& z,
                                 int xi, double eta) {
  if (!at_least(r_prime, r / 2)) throw PreconditionError("radius", "r' must be at least r / 2");
  g.require_subset(z.z);
  if (!is_subset(open_neighborhood(g, l), z.z)) throw PreconditionError("boundary", "N(V(L)) is not inside Z");
  if (!z.centers.empty() || z.z.empty()) {
    if (!verify_centered(g, z) || static_cast<int>(z.center_count()) > xi || !within(z.radius, eta))
      throw PreconditionError("centered", "Z is not certified (" + std::to_string(xi) + ", eta)-centered");
    return z;
  }
  auto cert = certify_centered(g, z.z, xi, eta);
  if (!cert) throw PreconditionError("centered", "Z is not (" + std::to_string(xi) + ", eta)-centered");
  return *cert.certificate;
}

}  // namespace

TrichotomyResult easy_tangle_trichotomy(const Graph& g, const VertexSet& l, const std::vector<VertexSet>& family,
                                        int k, int theta, double r, double r_prime, const CenteredSet& z, int xi,
                                        double eta, const Caps& caps) {
  if (k < 1 || theta < 1) throw InputError("k and theta must be positive");
  validate_family(g, l, family);
  CenteredSet zc = checked_boundary_set(g, l, r, r_prime, z, xi, eta);
  if (far_member_packing(g, family, r, static_cast<std::size_t>(k), caps).size() >= static_cast<std::size_t>(k))
    throw PreconditionError("packing", "L holds " + std::to_string(k) + " members pairwise at distance >= r");

  const VertexSet near_z = neighborhood(g, zc.z, r_prime);
  const auto remaining = avoiding(family, near_z);
  TrichotomyResult out;

  auto cover = exact_ball_cover(g, r_prime, remaining, caps.search_nodes);
  if (static_cast<int>(cover.centers.size()) <= 3 * theta - 3) {
    VertexSet fresh = set_intersection(ball_union(g, cover.centers, r_prime).z, l);
    out.outcome = 1;
    out.z_star = CenteredSet{set_union(near_z, fresh), set_union(zc.centers, cover.centers), eta + r_prime};
    out.fresh_part = CenteredSet{set_difference(out.z_star.z, near_z), cover.centers, r_prime};
    bool ok = verify_centered(g, out.z_star) && verify_centered(g, out.fresh_part) &&
              static_cast<int>(out.z_star.center_count()) <= xi + 3 * theta - 3 &&
              static_cast<int>(out.fresh_part.center_count()) <= 3 * theta - 3 && is_subset(near_z, out.z_star.z) &&
              is_subset(out.z_star.z, set_union(l, near_z)) &&
              std::all_of(family.begin(), family.end(), [&](const VertexSet& f) { return intersects(f, out.z_star.z); });
    if (!ok) throw InternalInconsistency("trichotomy: outcome 1 certificate failed its re-check");
    return out;
  }

  if (k >= 2) {
    for (const auto& s : enumerate_separations(g, l, theta, caps)) {
      VertexSet sep = s.separator();
      auto small = [&](const VertexSet& side) {
        auto members = side_members(g, remaining, side, sep, r_prime);
        return far_member_packing(g, members, r, static_cast<std::size_t>(k - 1), caps).size() <
               static_cast<std::size_t>(k - 1);
      };
      if (small(s.a) && small(s.b)) {
        out.outcome = 2;
        out.separation = s;
        return out;
      }
    }
  }

  auto built = build_gfrtz_tangle(g, l, family, r_prime, theta, zc.z, caps);
  if (built) {
    out.outcome = 3;
    out.tangle = std::move(built.tangle);
    return out;
  }
  throw InternalInconsistency("trichotomy: no outcome applies (tangle refused on " + built.refusal + ")");
}

int multifold_budget(const std::vector<int>& thetas, int upto) {
  if (thetas.empty()) throw InputError("empty theta sequence");
  int total = 3 * thetas[0] - 3;
  for (int i = 2; i <= upto; ++i) total += 2 * (3 * thetas.at(static_cast<std::size_t>(i - 1)) - 3);
  return total;
}

namespace {

struct PartialPart {
  VertexSet h;
  int index = 0;
  VertexSet z_h;
};

struct Partial {
  VertexSet z_star;
  std::vector<PartialPart> parts;
};

struct Decomposer {
  const Graph& g;
  double r;
  double r_prime;
  const Caps& caps;
  MultifoldResult& log;

  std::size_t packing(const std::vector<VertexSet>& f, int enough) const {
    return far_member_packing(g, f, r, static_cast<std::size_t>(enough), caps).size();
  }

  Partial solve(const VertexSet& l, const std::vector<VertexSet>& family, int k, const std::vector<int>& thetas,
                const VertexSet& z) {
    const VertexSet near_z = neighborhood(g, z, r_prime);
    if (k == 1) {
      if (!family.empty()) throw InternalInconsistency("multifold: k = 1 with a nonempty family");
      log.trace.push_back("base");
      return Partial{near_z, {}};
    }
    const int nu = static_cast<int>(packing(family, k));
    const int theta = thetas.front();
    const auto remaining = avoiding(family, near_z);

    auto cover = exact_ball_cover(g, r_prime, remaining, caps.search_nodes);
    if (static_cast<int>(cover.centers.size()) <= 3 * theta - 3) {
      log.trace.push_back("cover");
      return Partial{set_union(near_z, set_intersection(ball_union(g, cover.centers, r_prime).z, l)), {}};
    }

    auto built = build_gfrtz_tangle(g, l, family, r_prime, theta, z, caps);
    if (built) {
      const Tangle& t = *built.tangle;
      std::optional<VertexSet> l0;
      for (const auto& c : components(g, l))
        if (t.contains(Separation{set_difference(l, c), c})) l0 = c;
      if (!l0) throw InternalInconsistency("multifold: the tangle points at no component");
      if (build_gfrtz_tangle(g, l, family, r_prime, theta, near_z, caps)) {
        log.trace.push_back("tangle");
        return Partial{near_z, {PartialPart{*l0, 0, near_z}}};
      }
      const auto farther = avoiding(family, neighborhood(g, near_z, r_prime));
      for (const auto& s : t.members) {
        VertexSet sep = s.separator();
        if (holds_member(g, farther, s.b, sep, r_prime)) continue;
        log.trace.push_back("shifted-tangle");
        VertexSet wide = set_union(neighborhood(g, z, 2 * r_prime), neighborhood(g, sep, r_prime));
        return Partial{set_union(set_intersection(wide, l), near_z), {}};
      }
      throw InternalInconsistency("multifold: the shifted tangle fails but no separation shows it");
    }

    for (const auto& s : enumerate_separations(g, l, theta, caps)) {
      VertexSet sep = s.separator();
      auto small = [&](const VertexSet& side) {
        return static_cast<int>(packing(side_members(g, remaining, side, sep, r_prime), nu)) < nu;
      };
      if (!small(s.a) || !small(s.b)) continue;
      log.trace.push_back("split " + show(s));
      ++log.splits;
      const VertexSet z_next = set_union(z, sep);
      const VertexSet near_next = neighborhood(g, z_next, r_prime);
      Partial whole{{}, {}};
      for (const VertexSet* side : {&s.a, &s.b}) {
        VertexSet piece = set_difference(*side, sep);
        auto sub_family = inside(avoiding(family, near_next), piece);
        const int count = static_cast<int>(packing(sub_family, k));
        if (count > k - 2) throw InternalInconsistency("multifold: a split side keeps too many far members");
        std::vector<int> shifted(thetas.begin() + 1, thetas.begin() + 1 + (count + 1));
        Partial sub = solve(piece, sub_family, count + 1, shifted, z_next);
        whole.z_star = set_union(whole.z_star, sub.z_star);
        for (auto& p : sub.parts) whole.parts.push_back(PartialPart{p.h, p.index + 1, p.z_h});
      }
      return whole;
    }
    throw InternalInconsistency("multifold: neither cover, tangle nor split applies");
  }
};

CenteredSet default_certificate(const CenteredSet& z) {
  if (!z.centers.empty() || z.z.empty()) return z;
  return CenteredSet{z.z, z.z, 0};
}

bool centered_within(const Graph& g, const VertexSet& s, int count, double radius, const Caps& caps) {
  if (s.empty()) return true;
  if (count <= 0) return false;
  return static_cast<bool>(certify_centered(g, s, count, radius, SearchMode::exact, caps));
}

}  // namespace

MultifoldResult tangle_decompose(const Graph& g, const VertexSet& l, const std::vector<VertexSet>& family, int k,
                                 const std::vector<int>& thetas, double r, double r_prime, const CenteredSet& z,
                                 const Caps& caps) {
  if (k < 1) throw InputError("k must be positive");
  if (static_cast<int>(thetas.size()) < k) throw InputError("the theta sequence needs k entries");
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (thetas[i] < 1) throw InputError("theta entries must be positive");
    if (i > 0 && thetas[i] < thetas[i - 1]) throw InputError("the theta sequence must be nondecreasing");
  }
  validate_family(g, l, family);
  CenteredSet zc = default_certificate(z);
  checked_boundary_set(g, l, r, r_prime, zc, static_cast<int>(zc.center_count()), zc.radius);
  if (static_cast<int>(far_member_packing(g, family, r, static_cast<std::size_t>(k), caps).size()) >= k)
    throw PreconditionError("packing", "L holds " + std::to_string(k) + " members pairwise at distance >= r");

  MultifoldResult out;
  Decomposer d{g, r, r_prime, caps, out};
  Partial p = d.solve(l, family, k, thetas, zc.z);
  out.z_star = p.z_star;
  for (auto& part : p.parts) {
    auto built = build_gfrtz_tangle(g, part.h, inside(family, part.h), r_prime,
                                    thetas[static_cast<std::size_t>(part.index)], out.z_star, caps);
    if (!built) throw InternalInconsistency("multifold: piece " + show(part.h) + " carries no tangle");
    out.parts.push_back(TanglePart{part.h, part.index, part.z_h, *built.tangle});
  }
  auto failures = check_multifold(g, l, family, k, thetas, r, r_prime, zc, out, caps);
  if (!failures.empty()) throw InternalInconsistency("multifold: " + failures.front());
  return out;
}

std::vector<std::string> check_multifold(const Graph& g, const VertexSet& l, const std::vector<VertexSet>& family,
                                         int k, const std::vector<int>& thetas, double r, double r_prime,
                                         const CenteredSet& z, const MultifoldResult& result, const Caps& caps) {
  std::vector<std::string> failures;
  const CenteredSet zc = default_certificate(z);
  const VertexSet near_z = neighborhood(g, zc.z, r_prime);
  const VertexSet near2_z = neighborhood(g, zc.z, 2 * r_prime);
  const VertexSet& zs = result.z_star;
  if (!is_subset(near_z, zs)) failures.push_back("Z* misses part of N≤r'[Z]");
  if (!is_subset(zs, set_union(near_z, l))) failures.push_back("Z* leaves N≤r'[Z] ∪ V(L)");
  if (static_cast<int>(result.parts.size()) > k - 1) failures.push_back("more than k - 1 pieces");

  VertexSet covered;
  for (const auto& part : result.parts) {
    const std::string name = "piece " + show(part.h);
    if (part.h.empty() || !is_subset(part.h, l) || !is_connected(g, part.h))
      failures.push_back(name + " is not a connected subgraph of L");
    if (intersects(covered, part.h)) failures.push_back(name + " overlaps another piece");
    covered = set_union(covered, part.h);
    auto local = inside(family, part.h);
    const int nu = static_cast<int>(far_member_packing(g, local, r, local.size(), caps).size());
    if (part.index < 0 || part.index > nu) failures.push_back(name + " has index outside [0, nu(H)]");
    if (!is_subset(part.z_h, zs)) failures.push_back(name + ": Z_H is not inside Z*");
    VertexSet needed = set_union(open_neighborhood(g, part.h), set_difference(set_intersection(zs, part.h), near_z));
    if (!is_subset(needed, part.z_h)) failures.push_back(name + ": Z_H misses N(H) or Z* ∩ V(H)");
    VertexSet rest = set_difference(part.z_h, near2_z);
    if (part.index == 0 ? !rest.empty()
                        : !centered_within(g, rest, multifold_budget(thetas, part.index), 2 * r_prime, caps))
      failures.push_back(name + ": Z_H - N≤2r'[Z] breaks its budget");
    if (part.index >= 0 && part.index < static_cast<int>(thetas.size()) &&
        !build_gfrtz_tangle(g, part.h, local, r_prime, thetas[static_cast<std::size_t>(part.index)], zs, caps))
      failures.push_back(name + " carries no tangle");
    for (const auto& c : components(g, set_difference(l, zs)))
      if (intersects(c, part.h) && !is_subset(c, part.h)) failures.push_back(name + " cuts a component of L - Z*");
  }

  const int budget = multifold_budget(thetas, k - 1);
  if (!centered_within(g, set_difference(zs, near2_z), budget, 2 * r_prime, caps))
    failures.push_back("Z* - N≤2r'[Z] breaks its budget");
  if (!centered_within(g, zs, static_cast<int>(zc.center_count()) + budget, zc.radius + 2 * r_prime, caps))
    failures.push_back("Z* breaks its centering budget");
  for (const auto& f : family) {
    bool in_piece = std::any_of(result.parts.begin(), result.parts.end(),
                                [&](const TanglePart& p) { return is_subset(f, p.h); });
    if (!in_piece && !intersects(f, zs)) failures.push_back("member " + show(f) + " is not hit");
  }
  return failures;
}

}  // namespace coarse_menger
