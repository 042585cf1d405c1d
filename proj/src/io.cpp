#include "coarse_menger/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace coarse_menger {

namespace {

Vertex vertex_for(Graph& g, Label id) {
  if (auto v = g.find_label(id)) return *v;
  return g.add_vertex(id);
}

Label parse_id(const std::string& token, int line) {
  std::size_t used = 0;
  long long value = -1;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || value < 0)
    throw InputError("line " + std::to_string(line) + ": vertex id must be a nonnegative integer, got '" + token + "'");
  return value;
}

std::string format_weight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  Graph g;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() > 3) throw InputError("line " + std::to_string(line) + ": expected 'u v [weight]'");
    Vertex u = vertex_for(g, parse_id(tokens[0], line));
    if (tokens.size() == 1) continue;
    Vertex v = vertex_for(g, parse_id(tokens[1], line));
    try {
      if (tokens.size() == 3) {
        std::size_t used = 0;
        double w = std::stod(tokens[2], &used);
        if (used != tokens[2].size()) throw InputError("malformed weight '" + tokens[2] + "'");
        g.add_edge(u, v, w);
      } else {
        g.add_edge(u, v);
      }
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line) + ": " + e.what());
    } catch (const std::logic_error&) {
      throw InputError("line " + std::to_string(line) + ": malformed weight '" + tokens[2] + "'");
    }
  }
  return g;
}

Graph parse_edge_list_text(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::string format_edge_list(const Graph& g) {
  // Vertex lines are emitted only when edges alone would not reproduce the vertex order.
  std::vector<Vertex> appearance;
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const Edge& e : g.edges())
    for (Vertex v : {e.u, e.v})
      if (!seen[v]) {
        seen[v] = 1;
        appearance.push_back(v);
      }
  bool ordered = static_cast<int>(appearance.size()) == g.vertex_count();
  for (std::size_t i = 0; ordered && i < appearance.size(); ++i) ordered = appearance[i] == static_cast<Vertex>(i);
  std::ostringstream out;
  if (!ordered)
    for (Vertex v = 0; v < g.vertex_count(); ++v) out << g.label(v) << '\n';
  for (const Edge& e : g.edges()) {
    out << g.label(e.u) << ' ' << g.label(e.v);
    if (g.is_weighted()) out << ' ' << format_weight(e.weight);
    out << '\n';
  }
  return out.str();
}

Graph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("graph document must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) throw InputError("field 'vertices' must be an array");
  if (!doc.contains("edges") || !doc["edges"].is_array()) throw InputError("field 'edges' must be an array");
  Graph g;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_number_integer()) throw InputError("field 'vertices': ids must be integers");
    g.add_vertex(v.get<Label>());
  }
  const auto& edges = doc["edges"];
  const nlohmann::json* weights = nullptr;
  if (doc.contains("weights") && !doc["weights"].is_null()) {
    weights = &doc["weights"];
    if (!weights->is_array() || weights->size() != edges.size())
      throw InputError("field 'weights' must be an array parallel to 'edges'");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InputError("field 'edges[" + std::to_string(i) + "]' must be a pair of ids");
    auto u = g.find_label(e[0].get<Label>());
    auto v = g.find_label(e[1].get<Label>());
    if (!u || !v) throw InputError("field 'edges[" + std::to_string(i) + "]' references an undeclared vertex");
    if (weights) {
      if (!(*weights)[i].is_number()) throw InputError("field 'weights[" + std::to_string(i) + "]' must be a number");
      g.add_edge(*u, *v, (*weights)[i].get<double>());
    } else {
      g.add_edge(*u, *v);
    }
  }
  return g;
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json doc;
  doc["vertices"] = g.labels();
  auto edges = nlohmann::json::array();
  auto weights = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({g.label(e.u), g.label(e.v)});
    weights.push_back(e.weight);
  }
  doc["edges"] = std::move(edges);
  if (g.is_weighted()) doc["weights"] = std::move(weights);
  return doc;
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError("'" + path + "': " + e.what());
    }
    return graph_from_json(doc);
  }
  return parse_edge_list(in);
}

VertexSet vertices_from_labels(const Graph& g, const std::vector<Label>& labels) {
  std::vector<Vertex> out;
  for (Label l : labels) {
    auto v = g.find_label(l);
    if (!v) throw InputError("unknown vertex id " + std::to_string(l));
    out.push_back(*v);
  }
  return VertexSet(std::move(out));
}

std::vector<Label> labels_of(const Graph& g, const VertexSet& s) {
  std::vector<Label> out;
  for (Vertex v : s) out.push_back(g.label(v));
  return out;
}

}  // namespace coarse_menger
