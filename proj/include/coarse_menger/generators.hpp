#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coarse_menger/caps.hpp"
#include "coarse_menger/models.hpp"
#include "coarse_menger/tree.hpp"

namespace coarse_menger {

// Row-major rows x cols grid: vertex (i, j) is i * cols + j.
struct Grid {
  Graph graph;
  int rows = 0;
  int cols = 0;

  Vertex at(int i, int j) const { return i * cols + j; }
  VertexSet row(int i) const;
  VertexSet column(int j) const;
};

Grid grid(int rows, int cols);

// Path decomposition of a grid with bags {v, ..., v + cols} in row-major order.
TreeDecomposition grid_path_decomposition(const Grid& g);

// A claim attached to a generated instance. `origin` is "claimed" for statements carried
// over from the published analysis and "measured" for values computed here.
struct Annotation {
  std::string property;
  std::string origin;
  nlohmann::json expected;
  std::optional<bool> verified;
  nlohmann::json observed;
};

struct InstanceSpec {
  std::string family;
  nlohmann::json parameters;
  Graph graph;
  VertexSet x;
  VertexSet y;
  VertexSet a;
  std::optional<RootedPattern> rooted;
  std::optional<TreeDecomposition> decomposition;
  std::vector<Annotation> annotations;
};

// r x n grid with X the first and Y the last column.
InstanceSpec menger_lower_bound_instance(int r, int n);

// w x w grid with the rooted path on three vertices: first column, first row, last column.
InstanceSpec rooted_p3_grid(int w);

enum class RandomFamily { general, partial_k_tree };

struct RandomOptions {
  RandomFamily family = RandomFamily::general;
  int min_vertices = 2;
  int max_vertices = 10;
  double edge_probability = 0.35;
  bool connected = false;
  int max_weight = 1;  // integer lengths drawn from 1..max_weight
  int tree_width = 2;  // for partial k-trees
};

// Deterministic in (seed, count, options). Terminal sets x, y, a are nonempty random subsets.
// Partial k-trees keep at least one edge to each attachment clique, so they are connected,
// and ship the decomposition they were grown along.
std::vector<InstanceSpec> random_instances(std::uint64_t seed, int count, const RandomOptions& options = {});

// Re-checks every "claimed" annotation (and fills "measured" ones) when the instance fits
// the caps; annotations beyond the caps stay unverified.
void verify_annotations(InstanceSpec& spec, const Caps& caps = default_caps());

}  // namespace coarse_menger
