#pragma once

#include <cstddef>
#include <string>

namespace coarse_menger {

// Desk-scale limits for exhaustive searches. Defaults can be raised through
// the COARSE_MENGER_CAP environment variable, never beyond the hard limits.
struct Caps {
  int centered_exact_vertices = 20;
  int path_enumeration_vertices = 16;
  int gallai_vertices = 14;
  int model_vertices = 12;
  int connected_set_vertices = 25;
  int separation_vertices = 10;
  int separation_order = 4;
  std::size_t max_paths = 250000;
  std::size_t search_nodes = 20000000;
};

struct HardLimits {
  static constexpr int centered_exact_vertices = 64;
  static constexpr int path_enumeration_vertices = 24;
  static constexpr int gallai_vertices = 20;
  static constexpr int model_vertices = 16;
  static constexpr int connected_set_vertices = 36;
  static constexpr int separation_vertices = 14;
  static constexpr int separation_order = 5;
};

// Parses either a single integer (applied to every vertex cap) or a list such as
// "paths=18,centered=30". Unknown keys or non-numeric values throw InputError.
Caps parse_caps(const std::string& text, Caps base = {});

// Defaults overridden by COARSE_MENGER_CAP when set. Read once per process.
const Caps& default_caps();

}  // namespace coarse_menger
