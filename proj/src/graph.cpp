#include "gconf/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace gconf {

Graph::Graph(std::size_t vertex_count) {
  for (std::size_t i = 0; i < vertex_count; ++i) add_vertex();
}

Graph::Graph(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
             std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != vertex_count)
    throw GraphError("label count does not match vertex count");
  for (std::size_t i = 0; i < vertex_count; ++i) add_vertex(labels.empty() ? std::string{} : labels[i]);
  for (const auto& [x, y] : edges) add_edge(x, y);
}

std::optional<std::size_t> Graph::find_vertex(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::vector<std::size_t> Graph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  out.reserve(incident_[v].size());
  for (std::size_t e : incident_[v]) out.push_back(opposite(e, v));
  return out;
}

std::size_t Graph::opposite(std::size_t e, std::size_t v) const {
  const Edge& ed = edges_[e];
  if (ed.a == v) return ed.b;
  if (ed.b == v) return ed.a;
  throw GraphError("vertex is not an endpoint of edge");
}

std::optional<std::size_t> Graph::edge_index(std::size_t x, std::size_t y) const {
  auto it = edge_lookup_.find({std::min(x, y), std::max(x, y)});
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

bool Graph::closures_meet(std::size_t e, std::size_t f) const {
  const Edge& x = edges_[e];
  const Edge& y = edges_[f];
  return x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b;
}

void Graph::set_marked(std::optional<MarkedPair> m) {
  if (m && (m->u >= vertex_count() || m->v >= vertex_count()))
    throw GraphError("marked vertex out of range");
  marked_ = m;
}

std::size_t Graph::add_vertex(std::string label) {
  const std::size_t idx = labels_.size();
  if (label.empty()) label = std::to_string(idx);
  labels_.push_back(std::move(label));
  incident_.emplace_back();
  return idx;
}

std::size_t Graph::add_edge(std::size_t x, std::size_t y) {
  if (x >= vertex_count() || y >= vertex_count()) throw GraphError("edge endpoint out of range");
  if (x == y) throw GraphError("self-loop at vertex " + labels_[x]);
  const std::size_t a = std::min(x, y);
  const std::size_t b = std::max(x, y);
  if (edge_lookup_.count({a, b})) throw GraphError("duplicate edge " + labels_[a] + "-" + labels_[b]);
  const std::size_t idx = edges_.size();
  edges_.push_back({a, b});
  edge_lookup_[{a, b}] = idx;
  for (std::size_t v : {a, b}) {
    auto& inc = incident_[v];
    const std::size_t other = v == a ? b : a;
    auto pos = std::lower_bound(inc.begin(), inc.end(), other,
                                [&](std::size_t e, std::size_t o) { return opposite(e, v) < o; });
    inc.insert(pos, idx);
  }
  return idx;
}

bool operator==(const Graph& g, const Graph& h) {
  const bool marks_equal = g.marked_.has_value() == h.marked_.has_value() &&
                           (!g.marked_ || (g.marked_->u == h.marked_->u && g.marked_->v == h.marked_->v));
  return g.labels_ == h.labels_ && g.edges_ == h.edges_ && marks_equal;
}

// ----------------------------------------------------------------- chains

void Chain1::add(std::size_t edge, std::int64_t c) {
  if (c == 0) return;
  auto& slot = coefficients[edge];
  slot += c;
  if (slot == 0) coefficients.erase(edge);
}

std::vector<std::int64_t> Chain1::boundary(const Graph& g) const {
  std::vector<std::int64_t> out(g.vertex_count(), 0);
  for (const auto& [e, c] : coefficients) {
    if (e >= g.edge_count()) throw GraphError("chain references a missing edge");
    out[g.edge(e).b] += c;
    out[g.edge(e).a] -= c;
  }
  return out;
}

bool Chain1::is_cycle(const Graph& g) const {
  const auto d = boundary(g);
  return std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x == 0; });
}

Chain1 Chain1::scaled(std::int64_t k) const {
  Chain1 out;
  for (const auto& [e, c] : coefficients) out.add(e, c * k);
  return out;
}

Chain1 operator+(const Chain1& x, const Chain1& y) {
  Chain1 out = x;
  for (const auto& [e, c] : y.coefficients) out.add(e, c);
  return out;
}

Chain1 operator-(const Chain1& x, const Chain1& y) { return x + y.scaled(-1); }

// ------------------------------------------------------------ connectivity

std::vector<std::size_t> component_ids(const Graph& g) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> id(g.vertex_count(), kUnset);
  std::size_t next = 0;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    if (id[s] != kUnset) continue;
    std::deque<std::size_t> queue{s};
    id[s] = next;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y : g.neighbors(x))
        if (id[y] == kUnset) {
          id[y] = next;
          queue.push_back(y);
        }
    }
    ++next;
  }
  return id;
}

std::size_t component_count(const Graph& g) {
  const auto ids = component_ids(g);
  return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
}

bool is_connected(const Graph& g) { return component_count(g) == 1; }

std::size_t betti1(const Graph& g) { return g.edge_count() + component_count(g) - g.vertex_count(); }

Graph subdivide(const Graph& g, std::size_t k) {
  if (k == 0) return g;
  Graph out(0);
  for (const auto& l : g.labels()) out.add_vertex(l);
  for (const Edge& e : g.edges()) {
    std::size_t prev = e.a;
    for (std::size_t i = 1; i <= k; ++i) {
      std::size_t mid = out.add_vertex(g.label(e.a) + "~" + g.label(e.b) + "." + std::to_string(i));
      out.add_edge(prev, mid);
      prev = mid;
    }
    out.add_edge(prev, e.b);
  }
  out.set_marked(g.marked());
  return out;
}

namespace {

struct BfsTree {
  std::vector<std::size_t> parent_edge;  // kNone at roots
  std::vector<bool> tree_edge;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

BfsTree bfs_forest(const Graph& g) {
  BfsTree t{std::vector<std::size_t>(g.vertex_count(), kNone), std::vector<bool>(g.edge_count(), false)};
  std::vector<bool> seen(g.vertex_count(), false);
  for (std::size_t root = 0; root < g.vertex_count(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t e : g.incident_edges(x)) {
        const std::size_t y = g.opposite(e, x);
        if (seen[y]) continue;
        seen[y] = true;
        t.parent_edge[y] = e;
        t.tree_edge[e] = true;
        queue.push_back(y);
      }
    }
  }
  return t;
}

// Chain walking the tree from x up to its root.
Chain1 path_to_root(const Graph& g, const BfsTree& t, std::size_t x) {
  Chain1 c;
  while (t.parent_edge[x] != kNone) {
    const std::size_t e = t.parent_edge[x];
    const std::size_t p = g.opposite(e, x);
    c.add(e, g.edge(e).a == x ? 1 : -1);
    x = p;
  }
  return c;
}

std::vector<Chain1> fundamental_cycles(const Graph& g) {
  const BfsTree t = bfs_forest(g);
  std::vector<Chain1> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (t.tree_edge[e]) continue;
    Chain1 c;
    c.add(e, 1);
    c = c + path_to_root(g, t, g.edge(e).b) - path_to_root(g, t, g.edge(e).a);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<Chain1> cycle_basis(const Graph& g) {
  if (!is_connected(g)) throw GraphError("cycle basis requires a connected graph");
  return fundamental_cycles(g);
}

std::vector<Chain1> cycle_basis_forest(const Graph& g) { return fundamental_cycles(g); }

std::optional<Chain1> path_chain(const Graph& g, std::size_t from, std::size_t to,
                                 const std::vector<bool>* avoid) {
  if (from >= g.vertex_count() || to >= g.vertex_count()) throw GraphError("vertex out of range");
  std::vector<std::size_t> via(g.vertex_count(), kNone);
  std::vector<bool> seen(g.vertex_count(), false);
  seen[from] = true;
  std::deque<std::size_t> queue{from};
  while (!queue.empty() && !seen[to]) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t e : g.incident_edges(x)) {
      if (avoid && (*avoid)[e]) continue;
      const std::size_t y = g.opposite(e, x);
      if (seen[y]) continue;
      seen[y] = true;
      via[y] = e;
      queue.push_back(y);
    }
  }
  if (!seen[to]) return std::nullopt;
  Chain1 c;
  for (std::size_t x = to; x != from;) {
    const std::size_t e = via[x];
    const std::size_t p = g.opposite(e, x);
    // traversing p -> x
    c.add(e, g.edge(e).a == p ? 1 : -1);
    x = p;
  }
  return c;
}

std::int64_t sigma(const Graph& g) {
  std::int64_t s = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto mu = static_cast<std::int64_t>(g.degree(v));
    s += (mu - 1) * (mu - 2);
  }
  return s;
}

bool is_arc(const Graph& g) {
  if (g.edge_count() == 0 || !is_connected(g) || g.edge_count() + 1 != g.vertex_count()) return false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) > 2) return false;
  return true;
}

bool is_circle(const Graph& g) {
  if (g.vertex_count() == 0 || !is_connected(g)) return false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != 2) return false;
  return true;
}

InducedSubgraph remove_vertices(const Graph& g, const std::vector<std::size_t>& removed) {
  std::vector<bool> drop(g.vertex_count(), false);
  for (std::size_t r : removed) {
    if (r >= g.vertex_count()) throw GraphError("vertex out of range");
    drop[r] = true;
  }
  InducedSubgraph out;
  std::vector<std::size_t> index(g.vertex_count(), kNone);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!drop[v]) {
      index[v] = out.graph.add_vertex(g.label(v));
      out.to_parent.push_back(v);
    }
  for (const Edge& e : g.edges())
    if (!drop[e.a] && !drop[e.b]) out.graph.add_edge(index[e.a], index[e.b]);
  return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  Graph out = g;
  out.set_marked(std::nullopt);
  const std::size_t shift = g.vertex_count();
  for (const auto& l : h.labels()) {
    std::string label = l;
    while (out.find_vertex(label)) label += "'";
    out.add_vertex(label);
  }
  for (const Edge& e : h.edges()) out.add_edge(e.a + shift, e.b + shift);
  return out;
}

}  // namespace gconf
