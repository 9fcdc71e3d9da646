#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gconf/graph.hpp"

namespace gconf {

/// Named graph generators.
///
///   complete n            K_n
///   bipartite p q         K_{p,q}
///   cycle n               n-gon, n >= 3
///   path n                path with n edges
///   star k                k leaves around a centre
///   theta [k] [len]       two poles joined by k paths of len edges (3, 2)
///   wedge-triangles       two triangles sharing one vertex
///   doublewedge-squares   two 4-cycles sharing two opposite vertices
///   bridge-triangles [n]  two triangles joined by a path of n edges (1)
///   fig3                  triangle p q r with pendant edges p-v and q-u
///   fig6                  K_5 minus the edge u-v
///   fig7                  K_{3,3} minus the edge u-v
///
/// fig3, fig6 and fig7 carry their distinguished pair as `marked`.
Graph generate(const std::string& name, const std::vector<long>& params = {});

struct CatalogEntry {
  std::string spec;  // gen: specifier
  Graph graph;
};

/// The fixed set of named graphs exercised by the verification suites.
std::vector<CatalogEntry> standard_catalog();

}  // namespace gconf
