#pragma once

// Structural detectors for obstructions to maturity.  Wedge notions are
// topological, so cut detection runs on a canonical host: the topological
// reduction of the graph (valence-2 chains contracted, which may create loops
// and parallel edges) with every reduced edge subdivided into three edges.
// The host is simplicial, homeomorphic to the input, and every point class of
// the space is represented by a host vertex.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gconf/graph.hpp"

namespace gconf {

/// Decomposition host = side1 ∪ side2 with side1 ∩ side2 = cut (one vertex for
/// a wedge, two for a double wedge), both sides connected and not arcs.
struct WedgeWitness {
  std::vector<std::size_t> cut;  // host vertex indices
  std::vector<std::size_t> side1_edges;
  std::vector<std::size_t> side2_edges;
  std::vector<std::string> cut_description;  // in terms of the input graph
};

struct ReducedEdge {
  std::size_t from = 0;  // input vertex indices (essential)
  std::size_t to = 0;
  std::vector<std::size_t> chain;  // input edges along the chain
};

/// Topological reduction with its canonical simplicial host.
struct TopologicalReduction {
  Graph host;
  std::vector<std::size_t> essential;  // input vertices with degree != 2
  std::vector<ReducedEdge> reduced_edges;
  /// For each host vertex: the input vertex it is, or nullopt for chain interiors.
  std::vector<std::optional<std::size_t>> host_to_input;
  std::vector<std::string> host_description;
};

/// Requires a connected graph that is neither a single vertex nor a circle.
TopologicalReduction reduce_topology(const Graph& g);

struct StructureReport {
  std::size_t component_count = 0;
  std::vector<std::size_t> articulation_vertices;  // input graph
  /// Separation pairs of essential vertices in the reduced multigraph.
  std::vector<std::pair<std::size_t, std::size_t>> two_cuts;
  std::optional<WedgeWitness> wedge;
  std::optional<WedgeWitness> double_wedge;
  bool planar = false;

  bool arc = false;
  bool circle = false;
  std::vector<std::size_t> univalent_vertices;
  /// Host edge whose closure separates the host.
  std::optional<std::size_t> separating_edge;
  bool double_edge = false;

  /// Host graph the witnesses refer to (empty unless connected, non-special).
  Graph host;
};

StructureReport structure(const Graph& g);

bool is_planar(const Graph& g);

/// Checks the side conditions of a wedge witness against its host graph.
bool witness_is_valid(const Graph& host, const WedgeWitness& w, std::size_t cut_size);

}  // namespace gconf
