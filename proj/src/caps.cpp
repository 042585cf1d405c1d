#include "coarse_menger/caps.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "coarse_menger/errors.hpp"

namespace coarse_menger {

namespace {

int parse_positive(const std::string& text) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw InputError("cap value is not an integer: '" + text + "'");
  }
  if (used != text.size() || value <= 0) throw InputError("cap value must be a positive integer: '" + text + "'");
  return value;
}

}  // namespace

Caps parse_caps(const std::string& text, Caps base) {
  if (text.empty()) return base;
  if (text.find('=') == std::string::npos) {
    int v = parse_positive(text);
    base.centered_exact_vertices = std::min(v, HardLimits::centered_exact_vertices);
    base.path_enumeration_vertices = std::min(v, HardLimits::path_enumeration_vertices);
    base.gallai_vertices = std::min(v, HardLimits::gallai_vertices);
    base.model_vertices = std::min(v, HardLimits::model_vertices);
    base.separation_vertices = std::min(v, HardLimits::separation_vertices);
    base.connected_set_vertices = std::min(v, HardLimits::connected_set_vertices);
    return base;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("cap entry without '=': '" + item + "'");
    std::string key = item.substr(0, eq);
    int v = parse_positive(item.substr(eq + 1));
    if (key == "centered") base.centered_exact_vertices = std::min(v, HardLimits::centered_exact_vertices);
    else if (key == "paths") base.path_enumeration_vertices = std::min(v, HardLimits::path_enumeration_vertices);
    else if (key == "gallai") base.gallai_vertices = std::min(v, HardLimits::gallai_vertices);
    else if (key == "models") base.model_vertices = std::min(v, HardLimits::model_vertices);
    else if (key == "connected") base.connected_set_vertices = std::min(v, HardLimits::connected_set_vertices);
    else if (key == "separations") base.separation_vertices = std::min(v, HardLimits::separation_vertices);
    else if (key == "order") base.separation_order = std::min(v, HardLimits::separation_order);
    else if (key == "max_paths") base.max_paths = static_cast<std::size_t>(v);
    else if (key == "nodes") base.search_nodes = static_cast<std::size_t>(v);
    else throw InputError("unknown cap '" + key + "'");
  }
  return base;
}

const Caps& default_caps() {
  static const Caps caps = [] {
    const char* env = std::getenv("COARSE_MENGER_CAP");
    return env ? parse_caps(env) : Caps{};
  }();
  return caps;
}

}  // namespace coarse_menger
