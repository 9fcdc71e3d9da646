#pragma once

// JSON graph documents:
//   {"vertices": ["a", ...], "edges": [["a", "b"], ...], "marked": {"u": "a", "v": "b"}}
// Loading normalizes to a simplicial complex: the second and later copies of
// a multi-edge are subdivided once, self-loops are subdivided twice.

#include <string>

#include <json.hpp>

#include "gconf/graph.hpp"

namespace gconf {

Graph load_graph(const std::string& text);
Graph graph_from_json(const nlohmann::json& doc);

nlohmann::json graph_to_json(const Graph& g);
/// Canonical serialization used for files and fingerprints.
std::string emit_graph(const Graph& g);

/// Resolves a `gen:<name>:<p1>:<p2>...` specifier or reads a file path.
Graph resolve_graph(const std::string& spec);

std::string sha256_hex(const std::string& text);
/// Hex SHA-256 of the canonical serialization.
std::string fingerprint(const Graph& g);

}  // namespace gconf
