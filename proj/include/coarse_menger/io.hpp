#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "coarse_menger/graph.hpp"

namespace coarse_menger {

// Whitespace edge list: one "u v [weight]" per line, '#' starts a comment.
// A line holding a single id declares an isolated vertex.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_text(const std::string& text);
std::string format_edge_list(const Graph& g);

// {"vertices": [...], "edges": [[u, v], ...], "weights": [...]} with external ids.
Graph graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const Graph& g);

// Dispatches on the extension: ".json" reads JSON, anything else an edge list.
Graph load_graph(const std::string& path);

// Translates external ids to internal vertices; unknown ids throw InputError.
VertexSet vertices_from_labels(const Graph& g, const std::vector<Label>& labels);
std::vector<Label> labels_of(const Graph& g, const VertexSet& s);

}  // namespace coarse_menger
