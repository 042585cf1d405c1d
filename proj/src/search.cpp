#include "coarse_menger/search.hpp"

#include <algorithm>
#include <set>

#include "coarse_menger/errors.hpp"

namespace coarse_menger {

namespace {

struct CliqueSearch {
  std::vector<Bits> compat;
  std::vector<int> best;
  std::vector<int> current;
  std::size_t upper = 0;
  std::size_t budget = 0;
  std::size_t nodes = 0;
  bool exhausted = false;
  bool done = false;

  void expand(Bits cand) {
    if (done) return;
    if (++nodes > budget) {
      exhausted = done = true;
      return;
    }
    std::vector<int> order;
    std::vector<std::size_t> color;
    Bits uncolored = cand;
    std::size_t k = 0;
    while (uncolored.any()) {
      ++k;
      Bits q = uncolored;
      for (auto v = q.find_first(); v != Bits::npos; v = q.find_next(v)) {
        uncolored.reset(v);
        order.push_back(static_cast<int>(v));
        color.push_back(k);
        q -= compat[v];
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + color[i] <= best.size()) return;
      int v = order[i];
      current.push_back(v);
      Bits next = cand & compat[v];
      if (next.none()) {
        if (current.size() > best.size()) {
          best = current;
          if (best.size() >= upper) done = true;
        }
      } else {
        expand(std::move(next));
      }
      current.pop_back();
      if (done) return;
      cand.reset(v);
    }
  }
};

}  // namespace

IndependentSetResult maximum_independent_set(const std::vector<Bits>& conflicts, std::size_t upper_bound,
                                             std::size_t node_budget, const std::vector<int>& seed) {
  IndependentSetResult out;
  const std::size_t n = conflicts.size();
  out.members = seed;
  std::sort(out.members.begin(), out.members.end());
  if (n == 0 || out.members.size() >= std::min(upper_bound, n)) {
    out.optimal = out.members.size() >= std::min(upper_bound, n);
    return out;
  }
  CliqueSearch search;
  search.compat.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    search.compat[i] = ~conflicts[i];
    search.compat[i].reset(i);
  }
  search.best = out.members;
  search.upper = upper_bound;
  search.budget = node_budget;
  Bits all(n);
  all.set();
  search.expand(all);
  out.members = search.best;
  std::sort(out.members.begin(), out.members.end());
  out.optimal = !search.exhausted || out.members.size() >= upper_bound;
  out.nodes = search.nodes;
  return out;
}

namespace {

std::vector<std::vector<Vertex>> balls(const Graph& g, double radius) {
  const int n = g.vertex_count();
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(n));
  for (Vertex c = 0; c < n; ++c) {
    auto row = g.distances_from(c);
    for (Vertex v = 0; v < n; ++v)
      if (within(row[v], radius)) out[c].push_back(v);
  }
  return out;
}

// Centers whose radius-r ball meets `member`, ascending.
std::vector<Vertex> covering_centers(const Graph& g, double radius, const VertexSet& member) {
  auto d = distance_to_set(g, member);
  std::vector<Vertex> out;
  for (Vertex c = 0; c < g.vertex_count(); ++c)
    if (within(d[c], radius)) out.push_back(c);
  return out;
}

struct ImplicitSearch {
  const Graph& g;
  const ImplicitFamily& family;
  double radius;
  std::vector<std::vector<Vertex>> ball;
  std::vector<int> covered;
  std::vector<Vertex> chosen;
  std::set<std::vector<Vertex>> seen;
  std::size_t budget;
  std::size_t nodes = 0;

  std::vector<char> blocked() const {
    std::vector<char> b(covered.size());
    for (std::size_t v = 0; v < covered.size(); ++v) b[v] = covered[v] > 0;
    return b;
  }
  void add(Vertex c, int delta) {
    for (Vertex v : ball[c]) covered[v] += delta;
  }
  bool dfs(int remaining) {
    if (++nodes > budget) throw CapacityError("ball-cover search exceeded its node budget");
    auto member = family.unhit_member(blocked());
    if (!member) return true;
    if (remaining == 0) return false;
    for (Vertex c : covering_centers(g, radius, *member)) {
      std::vector<Vertex> key = chosen;
      key.insert(std::upper_bound(key.begin(), key.end(), c), c);
      if (!seen.insert(key).second) continue;
      chosen = key;
      add(c, 1);
      bool ok = dfs(remaining - 1);
      add(c, -1);
      if (ok) return true;
      chosen.erase(std::find(chosen.begin(), chosen.end(), c));
    }
    return false;
  }
};

}  // namespace

BallCoverResult exact_ball_cover(const Graph& g, double radius, const ImplicitFamily& family,
                                 std::size_t node_budget) {
  ImplicitSearch search{g, family, radius, balls(g, radius), std::vector<int>(g.vertex_count(), 0), {}, {},
                        node_budget};
  for (int size = 0; size <= g.vertex_count(); ++size) {
    search.chosen.clear();
    search.seen.clear();
    if (search.dfs(size)) return BallCoverResult{VertexSet(search.chosen), true, search.nodes};
  }
  throw InternalInconsistency("implicit family cannot be hit even by every vertex");
}

BallCoverResult greedy_ball_cover(const Graph& g, double radius, const ImplicitFamily& family) {
  auto ball = balls(g, radius);
  std::vector<char> blocked(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<Vertex> chosen;
  BallCoverResult out;
  while (auto member = family.unhit_member(blocked)) {
    ++out.nodes;
    Vertex best = -1;
    std::size_t best_residual = 0;
    for (Vertex c : covering_centers(g, radius, *member)) {
      auto trial = blocked;
      for (Vertex v : ball[c]) trial[v] = 1;
      std::size_t res = family.residual(trial);
      if (best < 0 || res < best_residual) {
        best = c;
        best_residual = res;
      }
    }
    if (best < 0) throw InternalInconsistency("unhit member with no covering center");
    for (Vertex v : ball[best]) blocked[v] = 1;
    chosen.push_back(best);
  }
  out.centers = VertexSet(chosen);
  return out;
}

namespace {

struct SetCoverSearch {
  std::vector<Bits> cover;                      // per center: members hit
  std::vector<std::vector<Vertex>> candidates;  // per member: centers hitting it
  std::vector<Vertex> best;
  std::vector<Vertex> chosen;
  std::size_t budget;
  std::size_t nodes = 0;

  std::size_t disjoint_lower_bound(const Bits& uncovered) const {
    Bits used(cover.size());
    std::size_t count = 0;
    for (auto i = uncovered.find_first(); i != Bits::npos; i = uncovered.find_next(i)) {
      bool clash = false;
      for (Vertex c : candidates[i])
        if (used.test(c)) {
          clash = true;
          break;
        }
      if (clash) continue;
      ++count;
      for (Vertex c : candidates[i]) used.set(c);
    }
    return count;
  }

  void solve(const Bits& uncovered) {
    if (++nodes > budget) throw CapacityError("set-cover search exceeded its node budget");
    if (uncovered.none()) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    if (chosen.size() + disjoint_lower_bound(uncovered) >= best.size()) return;
    std::size_t pick = Bits::npos;
    for (auto i = uncovered.find_first(); i != Bits::npos; i = uncovered.find_next(i))
      if (pick == Bits::npos || candidates[i].size() < candidates[pick].size()) pick = i;
    for (Vertex c : candidates[pick]) {
      chosen.push_back(c);
      solve(uncovered - cover[c]);
      chosen.pop_back();
    }
  }
};

SetCoverSearch make_set_cover(const Graph& g, double radius, const std::vector<VertexSet>& members) {
  SetCoverSearch s;
  const std::size_t m = members.size();
  s.cover.assign(static_cast<std::size_t>(g.vertex_count()), Bits(m));
  for (std::size_t i = 0; i < m; ++i) {
    if (members[i].empty()) throw InputError("family contains an empty member");
    s.candidates.push_back(covering_centers(g, radius, members[i]));
    for (Vertex c : s.candidates.back()) s.cover[c].set(i);
  }
  return s;
}

}  // namespace

BallCoverResult greedy_ball_cover(const Graph& g, double radius, const std::vector<VertexSet>& members) {
  auto s = make_set_cover(g, radius, members);
  Bits uncovered(members.size());
  uncovered.set();
  std::vector<Vertex> chosen;
  while (uncovered.any()) {
    Vertex best = -1;
    std::size_t gain = 0;
    for (Vertex c = 0; c < g.vertex_count(); ++c) {
      std::size_t here = (s.cover[c] & uncovered).count();
      if (here > gain) {
        gain = here;
        best = c;
      }
    }
    chosen.push_back(best);
    uncovered -= s.cover[best];
  }
  return BallCoverResult{VertexSet(chosen), false, chosen.size()};
}

BallCoverResult exact_ball_cover(const Graph& g, double radius, const std::vector<VertexSet>& members,
                                 std::size_t node_budget) {
  auto s = make_set_cover(g, radius, members);
  auto greedy = greedy_ball_cover(g, radius, members);
  s.best = greedy.centers.members();
  s.budget = node_budget;
  Bits all(members.size());
  all.set();
  s.solve(all);
  return BallCoverResult{VertexSet(s.best), true, s.nodes};
}

}  // namespace coarse_menger
