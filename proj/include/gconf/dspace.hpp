#pragma once

// Discrete two-point configuration space: products of closed cells with
// disjoint closures, built on a subdivision of the input.  Only graph and
// linear algebra code is shared with the formula pipeline.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gconf/graph.hpp"
#include "gconf/intersection.hpp"
#include "gconf/linalg.hpp"

namespace gconf {

struct CellComplex2 {
  Graph graph;  // the subdivided graph the cells live on
  std::vector<std::pair<std::size_t, std::size_t>> cells0;  // (v, w)
  /// (vertex, edge) pairs: first block is v x e, second block is e x w.
  std::vector<std::pair<std::size_t, std::size_t>> cells1;
  std::size_t vertex_first_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> cells2;  // (e, f)
  SparseMatrix boundary1;
  SparseMatrix boundary2;
};

/// Subdivides every edge `subdivisions` times (default: into three) first.
CellComplex2 build_dspace(const Graph& g, std::size_t subdivisions = 2);

struct HomologyReport {
  std::size_t b0 = 0;
  std::size_t b1 = 0;
  std::size_t b2 = 0;
  IntVector torsion1;
  std::size_t cells0 = 0;
  std::size_t cells1 = 0;
  std::size_t cells2 = 0;
};

/// Throws LinalgError when the boundary maps do not compose to zero.
HomologyReport homology(const CellComplex2& c);

struct Verdict {
  HomologyReport oracle;
  BettiReport formula;
  AbelianPresentation q;  // from the coordinate route, empty for special cases
  std::size_t form_kernel_rank = 0;
  std::vector<std::string> mismatches;
  bool match() const { return mismatches.empty(); }
};

Verdict verify(const Graph& g, std::size_t subdivisions = 2);

nlohmann::json to_json(const HomologyReport& h);
nlohmann::json to_json(const Verdict& v);

}  // namespace gconf
