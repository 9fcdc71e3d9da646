#pragma once

// Finite simple graphs viewed as 1-dimensional simplicial complexes.  Every
// edge is stored with its canonical orientation low index -> high index, and
// all downstream sign conventions derive from that orientation.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gconf {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  std::size_t a = 0;  // tail, a < b
  std::size_t b = 0;  // head

  bool touches(std::size_t v) const { return a == v || b == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Optional pair of distinguished vertices carried by catalog graphs.
struct MarkedPair {
  std::size_t u = 0;
  std::size_t v = 0;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count);
  /// Validates simpliciality; endpoints may be given in either order.
  Graph(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
        std::vector<std::string> labels = {});

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t v) const { return labels_[v]; }
  std::optional<std::size_t> find_vertex(const std::string& label) const;

  std::size_t degree(std::size_t v) const { return incident_[v].size(); }
  /// Incident edge indices in increasing order of the opposite endpoint.
  const std::vector<std::size_t>& incident_edges(std::size_t v) const { return incident_[v]; }
  std::vector<std::size_t> neighbors(std::size_t v) const;
  std::size_t opposite(std::size_t edge, std::size_t v) const;
  std::optional<std::size_t> edge_index(std::size_t x, std::size_t y) const;
  bool adjacent(std::size_t x, std::size_t y) const { return edge_index(x, y).has_value(); }

  /// Closed edges share at least one endpoint (an edge meets itself).
  bool closures_meet(std::size_t e, std::size_t f) const;

  const std::optional<MarkedPair>& marked() const { return marked_; }
  void set_marked(std::optional<MarkedPair> m);

  /// Appends a vertex and returns its index.
  std::size_t add_vertex(std::string label = {});
  /// Appends an edge and returns its index; rejects loops and duplicates.
  std::size_t add_edge(std::size_t x, std::size_t y);

  friend bool operator==(const Graph& g, const Graph& h);

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_lookup_;
  std::optional<MarkedPair> marked_;
};

/// Integer 1-chain: edge index -> coefficient (absent means zero).
struct Chain1 {
  std::map<std::size_t, std::int64_t> coefficients;

  void add(std::size_t edge, std::int64_t c);
  bool empty() const { return coefficients.empty(); }
  /// Boundary as a 0-chain indexed by vertex; the edge a->b maps to b - a.
  std::vector<std::int64_t> boundary(const Graph& g) const;
  bool is_cycle(const Graph& g) const;
  Chain1 scaled(std::int64_t k) const;

  friend Chain1 operator+(const Chain1& x, const Chain1& y);
  friend Chain1 operator-(const Chain1& x, const Chain1& y);
  friend bool operator==(const Chain1&, const Chain1&) = default;
};

std::size_t component_count(const Graph& g);
bool is_connected(const Graph& g);
/// Component id per vertex, numbered in order of lowest vertex.
std::vector<std::size_t> component_ids(const Graph& g);

/// First Betti number |E| - |V| + b0.
std::size_t betti1(const Graph& g);

/// Replaces every edge by a path of k + 1 edges.  Original vertices keep
/// their indices; new vertices are appended edge by edge.
Graph subdivide(const Graph& g, std::size_t k);

/// Fundamental cycles of a lowest-index-first breadth-first spanning tree,
/// one per non-tree edge in edge order.  Requires a connected graph.
std::vector<Chain1> cycle_basis(const Graph& g);
/// Same construction applied to each component of a possibly disconnected graph.
std::vector<Chain1> cycle_basis_forest(const Graph& g);

/// Path chain a from `from` to `to` with boundary to - from, following a
/// shortest path with lowest-index tie breaking.  Edges listed in `avoid`
/// are not used.  Returns nullopt when no such path exists.
std::optional<Chain1> path_chain(const Graph& g, std::size_t from, std::size_t to,
                                 const std::vector<bool>* avoid = nullptr);

/// Sum over vertices of (deg - 1)(deg - 2).
std::int64_t sigma(const Graph& g);

/// Connected, a tree, every degree at most two and at least one edge.
bool is_arc(const Graph& g);
/// Connected and every vertex of degree two.
bool is_circle(const Graph& g);

/// Induced subgraph on all vertices except u and v, with the map from new
/// vertex indices back to g.
struct InducedSubgraph {
  Graph graph;
  std::vector<std::size_t> to_parent;
};
InducedSubgraph remove_vertices(const Graph& g, const std::vector<std::size_t>& removed);

/// Disjoint union; vertices of h are shifted by g.vertex_count().
Graph disjoint_union(const Graph& g, const Graph& h);

}  // namespace gconf
