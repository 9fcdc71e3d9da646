#include "gconf/catalog.hpp"

#include "gconf/graph_io.hpp"

namespace gconf {

namespace {

void expect_params(const std::string& name, const std::vector<long>& params, std::size_t min,
                   std::size_t max) {
  if (params.size() < min || params.size() > max)
    throw GraphError("generator " + name + " takes " + std::to_string(min) +
                     (max != min ? "-" + std::to_string(max) : "") + " parameters");
}

Graph complete(long n) {
  if (n < 1) throw GraphError("complete graph needs n >= 1");
  Graph g(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph bipartite(long p, long q) {
  if (p < 1 || q < 1) throw GraphError("bipartite graph needs p, q >= 1");
  Graph g(0);
  for (long i = 0; i < p; ++i) g.add_vertex("a" + std::to_string(i));
  for (long j = 0; j < q; ++j) g.add_vertex("b" + std::to_string(j));
  for (long i = 0; i < p; ++i)
    for (long j = 0; j < q; ++j) g.add_edge(i, p + j);
  return g;
}

Graph cycle(long n) {
  if (n < 3) throw GraphError("cycle needs n >= 3");
  Graph g(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path(long n) {
  if (n < 1) throw GraphError("path needs at least one edge");
  Graph g(static_cast<std::size_t>(n + 1));
  for (long i = 0; i < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph star(long k) {
  if (k < 1) throw GraphError("star needs at least one leaf");
  Graph g(static_cast<std::size_t>(k + 1));
  for (long i = 1; i <= k; ++i) g.add_edge(0, i);
  return g;
}

Graph theta(long k, long len) {
  if (k < 2) throw GraphError("theta needs at least two paths");
  if (len < 2) throw GraphError("theta paths need at least two edges");
  Graph g(0);
  const std::size_t s = g.add_vertex("s");
  const std::size_t t = g.add_vertex("t");
  for (long i = 0; i < k; ++i) {
    std::size_t prev = s;
    for (long j = 1; j < len; ++j) {
      const std::size_t m = g.add_vertex("p" + std::to_string(i) + "." + std::to_string(j));
      g.add_edge(prev, m);
      prev = m;
    }
    g.add_edge(prev, t);
  }
  return g;
}

Graph from_edges(const std::vector<std::string>& labels,
                 const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  return Graph(labels.size(), edges, labels);
}

}  // namespace

Graph generate(const std::string& name, const std::vector<long>& params) {
  if (name == "complete") {
    expect_params(name, params, 1, 1);
    return complete(params[0]);
  }
  if (name == "bipartite") {
    expect_params(name, params, 2, 2);
    return bipartite(params[0], params[1]);
  }
  if (name == "cycle") {
    expect_params(name, params, 1, 1);
    return cycle(params[0]);
  }
  if (name == "path") {
    expect_params(name, params, 1, 1);
    return path(params[0]);
  }
  if (name == "star") {
    expect_params(name, params, 1, 1);
    return star(params[0]);
  }
  if (name == "theta") {
    expect_params(name, params, 0, 2);
    return theta(params.size() > 0 ? params[0] : 3, params.size() > 1 ? params[1] : 2);
  }
  if (name == "wedge-triangles") {
    expect_params(name, params, 0, 0);
    return from_edges({"w", "a1", "a2", "b1", "b2"}, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}});
  }
  if (name == "doublewedge-squares") {
    expect_params(name, params, 0, 0);
    return from_edges({"x", "y", "a", "b", "c", "d"},
                      {{0, 2}, {2, 1}, {1, 3}, {3, 0}, {0, 4}, {4, 1}, {1, 5}, {5, 0}});
  }
  if (name == "bridge-triangles") {
    expect_params(name, params, 0, 1);
    const long len = params.empty() ? 1 : params[0];
    if (len < 1) throw GraphError("bridge needs at least one edge");
    Graph g = from_edges({"a0", "a1", "a2", "b0", "b1", "b2"}, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    std::size_t prev = 0;
    for (long j = 1; j < len; ++j) {
      const std::size_t m = g.add_vertex("m" + std::to_string(j));
      g.add_edge(prev, m);
      prev = m;
    }
    g.add_edge(prev, 3);
    return g;
  }
  if (name == "fig3") {
    expect_params(name, params, 0, 0);
    // e1 = p-r, e2 = p-q, e3 = q-r, e4 = p-v, e5 = q-u
    Graph g = from_edges({"p", "q", "r", "u", "v"}, {{0, 2}, {0, 1}, {1, 2}, {0, 4}, {1, 3}});
    g.set_marked(MarkedPair{3, 4});
    return g;
  }
  if (name == "fig6") {
    expect_params(name, params, 0, 0);
    Graph g(0);
    for (const char* l : {"u", "v", "a", "b", "c"}) g.add_vertex(l);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j)
        if (!(i == 0 && j == 1)) g.add_edge(i, j);
    g.set_marked(MarkedPair{0, 1});
    return g;
  }
  if (name == "fig7") {
    expect_params(name, params, 0, 0);
    // parts {u, a1, a2} and {v, b1, b2}
    Graph g(0);
    for (const char* l : {"u", "a1", "a2", "v", "b1", "b2"}) g.add_vertex(l);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 3; j < 6; ++j)
        if (!(i == 0 && j == 3)) g.add_edge(i, j);
    g.set_marked(MarkedPair{0, 3});
    return g;
  }
  throw GraphError("unknown generator " + name);
}

std::vector<CatalogEntry> standard_catalog() {
  const std::vector<std::string> specs = {
      "gen:complete:3",  "gen:complete:4",       "gen:complete:5",           "gen:bipartite:3:3",
      "gen:bipartite:2:3", "gen:cycle:4",        "gen:path:3",               "gen:star:3",
      "gen:star:4",      "gen:theta",            "gen:wedge-triangles",      "gen:doublewedge-squares",
      "gen:bridge-triangles", "gen:fig3",        "gen:fig6",                 "gen:fig7"};
  std::vector<CatalogEntry> out;
  for (const auto& s : specs) out.push_back({s, resolve_graph(s)});
  return out;
}

}  // namespace gconf
