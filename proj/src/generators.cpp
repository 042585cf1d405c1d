#include "coarse_menger/generators.hpp"

#include <algorithm>
#include <random>

#include "coarse_menger/covering.hpp"
#include "coarse_menger/packing.hpp"

namespace coarse_menger {

VertexSet Grid::row(int i) const {
  std::vector<Vertex> out;
  for (int j = 0; j < cols; ++j) out.push_back(at(i, j));
  return VertexSet(std::move(out));
}

VertexSet Grid::column(int j) const {
  std::vector<Vertex> out;
  for (int i = 0; i < rows; ++i) out.push_back(at(i, j));
  return VertexSet(std::move(out));
}

Grid grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InputError("grid dimensions must be positive");
  Grid g{Graph(rows * cols), rows, cols};
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if (j + 1 < cols) g.graph.add_edge(g.at(i, j), g.at(i, j + 1));
      if (i + 1 < rows) g.graph.add_edge(g.at(i, j), g.at(i + 1, j));
    }
  return g;
}

TreeDecomposition grid_path_decomposition(const Grid& g) {
  const int n = g.rows * g.cols;
  const int nodes = std::max(1, n - g.cols);
  TreeDecomposition td;
  td.tree = Graph(nodes);
  for (int t = 0; t + 1 < nodes; ++t) td.tree.add_edge(t, t + 1);
  for (int t = 0; t < nodes; ++t) {
    std::vector<Vertex> bag;
    for (int v = t; v <= std::min(t + g.cols, n - 1); ++v) bag.push_back(v);
    td.bags.emplace_back(std::move(bag));
  }
  return td;
}

InstanceSpec menger_lower_bound_instance(int r, int n) {
  if (r < 2 || n < r) throw InputError("the grid instance needs r >= 2 and n >= r");
  Grid g = grid(r, n);
  InstanceSpec spec;
  spec.family = "menger-lower-bound";
  spec.parameters = {{"r", r}, {"n", n}};
  spec.graph = g.graph;
  spec.x = g.column(0);
  spec.y = g.column(n - 1);
  spec.annotations.push_back({"packing at threshold r", "claimed", 1, std::nullopt, nullptr});
  spec.annotations.push_back({"cover by radius-1 balls", "claimed", {{"at_least", (r + 2) / 3}}, std::nullopt, nullptr});
  spec.annotations.push_back({"rows met by a radius-1 ball", "claimed", {{"at_most", 3}}, std::nullopt, nullptr});
  return spec;
}

InstanceSpec rooted_p3_grid(int w) {
  if (w < 3) throw InputError("the rooted path grid needs w >= 3");
  Grid g = grid(w, w);
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  InstanceSpec spec;
  spec.family = "rooted-p3-grid";
  spec.parameters = {{"w", w}};
  spec.graph = g.graph;
  spec.rooted = RootedPattern{p3, {g.column(0), g.row(0), g.column(w - 1)}, 0};
  spec.decomposition = grid_path_decomposition(g);
  spec.annotations.push_back({"two disjoint rooted models", "claimed", false, std::nullopt, nullptr});
  spec.annotations.push_back({"minimum hitting set size", "measured", nullptr, std::nullopt, nullptr});
  return spec;
}

namespace {

struct Draw {
  std::mt19937_64 rng;
  std::uint64_t below(std::uint64_t bound) { return rng() % bound; }
  bool chance(double p) { return static_cast<double>(below(1000000)) < p * 1000000.0; }
};

void add_random_edge(Graph& g, Vertex u, Vertex v, int max_weight, Draw& d) {
  if (max_weight > 1) g.add_edge(u, v, static_cast<double>(1 + d.below(static_cast<std::uint64_t>(max_weight))));
  else g.add_edge(u, v);
}

VertexSet random_subset(int n, Draw& d) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (d.below(3) == 0) out.push_back(v);
  if (out.empty()) out.push_back(static_cast<Vertex>(d.below(static_cast<std::uint64_t>(n))));
  return VertexSet(std::move(out));
}

void grow_partial_k_tree(InstanceSpec& spec, int n, const RandomOptions& o, Draw& d) {
  const int k = std::max(1, o.tree_width);
  Graph& g = spec.graph;
  TreeDecomposition td;
  const int base = std::min(n, k + 1);
  std::vector<Vertex> first;
  for (Vertex v = 0; v < base; ++v) first.push_back(v);
  for (Vertex u = 0; u < base; ++u)
    for (Vertex v = u + 1; v < base; ++v)
      if (v == u + 1 || d.chance(o.edge_probability)) add_random_edge(g, u, v, o.max_weight, d);
  std::vector<std::vector<Vertex>> bags{first};
  std::vector<std::pair<int, int>> tree_edges;
  for (Vertex v = base; v < n; ++v) {
    const int parent = static_cast<int>(d.below(bags.size()));
    std::vector<Vertex> clique = bags[parent];
    clique.erase(clique.begin() + static_cast<long>(d.below(clique.size())));
    const Vertex anchor = clique[d.below(clique.size())];
    for (Vertex u : clique)
      if (u == anchor || d.chance(o.edge_probability)) add_random_edge(g, u, v, o.max_weight, d);
    clique.push_back(v);
    tree_edges.emplace_back(parent, static_cast<int>(bags.size()));
    bags.push_back(clique);
  }
  td.tree = Graph(static_cast<int>(bags.size()));
  for (auto [s, t] : tree_edges) td.tree.add_edge(s, t);
  for (auto& b : bags) td.bags.emplace_back(std::move(b));
  spec.decomposition = std::move(td);
  spec.annotations.push_back({"shipped decomposition is valid", "measured", true, std::nullopt, nullptr});
}

}  // namespace

std::vector<InstanceSpec> random_instances(std::uint64_t seed, int count, const RandomOptions& o) {
  if (o.min_vertices < 1 || o.max_vertices < o.min_vertices) throw InputError("bad vertex range for random instances");
  if (o.edge_probability < 0 || o.edge_probability > 1) throw InputError("edge probability must lie in [0, 1]");
  if (o.max_weight < 1) throw InputError("max_weight must be at least 1");
  Draw d{std::mt19937_64(seed)};
  std::vector<InstanceSpec> out;
  for (int index = 0; index < count; ++index) {
    const int n = o.min_vertices + static_cast<int>(d.below(static_cast<std::uint64_t>(o.max_vertices - o.min_vertices + 1)));
    InstanceSpec spec;
    spec.graph = Graph(n);
    if (o.family == RandomFamily::partial_k_tree) {
      spec.family = "partial-k-tree";
      grow_partial_k_tree(spec, n, o, d);
    } else {
      spec.family = "random";
      if (o.connected)
        for (Vertex v = 1; v < n; ++v)
          add_random_edge(spec.graph, static_cast<Vertex>(d.below(static_cast<std::uint64_t>(v))), v, o.max_weight, d);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (!spec.graph.adjacent(u, v) && d.chance(o.edge_probability)) add_random_edge(spec.graph, u, v, o.max_weight, d);
    }
    spec.x = random_subset(n, d);
    spec.y = random_subset(n, d);
    spec.a = random_subset(n, d);
    spec.parameters = {{"seed", seed}, {"index", index}, {"vertices", n}};
    if (o.family == RandomFamily::partial_k_tree) spec.parameters["tree_width"] = o.tree_width;
    out.push_back(std::move(spec));
  }
  return out;
}

namespace {

int rows_met(const Grid& g, Vertex center) {
  std::vector<char> met(static_cast<std::size_t>(g.rows), 0);
  for (Vertex v : neighborhood(g.graph, VertexSet{center}, 1)) met[v / g.cols] = 1;
  return static_cast<int>(std::count(met.begin(), met.end(), 1));
}

void check_one(InstanceSpec& spec, Annotation& note, const Caps& caps) {
  const Graph& g = spec.graph;
  if (note.property == "packing at threshold r") {
    double r = spec.parameters.at("r").get<double>();
    auto sol = max_far_packing(g, spec.x, spec.y, 0, r, SearchMode::exact, caps);
    note.observed = sol.size();
    note.verified = sol.optimal && sol.size() == note.expected.get<std::size_t>();
  } else if (note.property == "cover by radius-1 balls") {
    auto cover = min_ball_hitting(g, LxyFamily{0, spec.x, spec.y}, 1, SearchMode::exact, caps);
    note.observed = cover.count();
    note.verified = cover.optimal && cover.count() >= note.expected.at("at_least").get<std::size_t>();
  } else if (note.property == "rows met by a radius-1 ball") {
    Grid shape{g, spec.parameters.at("r").get<int>(), spec.parameters.at("n").get<int>()};
    int worst = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) worst = std::max(worst, rows_met(shape, v));
    note.observed = worst;
    note.verified = worst <= note.expected.at("at_most").get<int>();
  } else if (note.property == "two disjoint rooted models") {
    bool found = has_disjoint_rooted_models(g, *spec.rooted, caps);
    note.observed = found;
    note.verified = found == note.expected.get<bool>();
  } else if (note.property == "minimum hitting set size") {
    auto z = min_model_hitting_set(g, *spec.rooted, caps);
    note.observed = z.size();
    note.verified = true;
  } else if (note.property == "shipped decomposition is valid") {
    auto check = check_decomposition(g, *spec.decomposition);
    note.observed = check.valid ? nlohmann::json(true) : nlohmann::json(check.violation);
    note.verified = check.valid;
  }
}

}  // namespace

void verify_annotations(InstanceSpec& spec, const Caps& caps) {
  for (auto& note : spec.annotations) {
    try {
      check_one(spec, note, caps);
    } catch (const CapacityError& e) {
      note.verified.reset();
      note.observed = std::string("capacity: ") + e.what();
    }
  }
}

}  // namespace coarse_menger
