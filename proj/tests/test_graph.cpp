#include <doctest.h>

#include "gconf/catalog.hpp"
#include "gconf/graph.hpp"
#include "gconf/graph_io.hpp"

using namespace gconf;

TEST_CASE("graph basics") {
  Graph g(3, {{0, 1}, {2, 1}});
  CHECK(g.edge(1).a == 1);
  CHECK(g.edge(1).b == 2);
  CHECK_THROWS_AS(g.add_edge(1, 1), GraphError);
  CHECK_THROWS_AS(g.add_edge(0, 1), GraphError);
  CHECK(is_arc(g));
  CHECK_FALSE(is_circle(g));
  CHECK(betti1(g) == 0);
  CHECK(g.closures_meet(0, 1));
}

TEST_CASE("sigma") {
  CHECK(sigma(generate("complete", {5})) == 30);
  CHECK(sigma(generate("bipartite", {3, 3})) == 12);
  CHECK(sigma(generate("star", {3})) == 2);
  CHECK(sigma(generate("cycle", {5})) == 0);
}

TEST_CASE("cycle basis") {
  for (const auto& entry : standard_catalog()) {
    const Graph& g = entry.graph;
    const auto basis = cycle_basis(g);
    CHECK(basis.size() == betti1(g));
    for (const auto& z : basis) CHECK(z.is_cycle(g));
  }
  Graph two = disjoint_union(generate("cycle", {3}), generate("cycle", {4}));
  CHECK_THROWS_AS(cycle_basis(two), GraphError);
  CHECK(cycle_basis_forest(two).size() == 2);
}

TEST_CASE("subdivision") {
  Graph g = generate("complete", {4});
  Graph s = subdivide(g, 2);
  CHECK(s.vertex_count() == 4 + 2 * 6);
  CHECK(s.edge_count() == 18);
  CHECK(betti1(s) == betti1(g));
  CHECK(sigma(s) == sigma(g));
  Graph f = generate("fig6");
  CHECK(subdivide(f, 1).marked()->u == f.marked()->u);
}

TEST_CASE("path chain") {
  Graph g = generate("cycle", {6});
  auto a = path_chain(g, 0, 3);
  REQUIRE(a);
  auto d = a->boundary(g);
  CHECK(d[3] == 1);
  CHECK(d[0] == -1);
  std::vector<bool> avoid(g.edge_count(), false);
  for (const auto& [e, c] : a->coefficients) avoid[e] = true;
  auto b = path_chain(g, 0, 3, &avoid);
  REQUIRE(b);
  CHECK((*a - *b).is_cycle(g));
  CHECK(path_chain(disjoint_union(g, g), 0, 7) == std::nullopt);
}

TEST_CASE("remove vertices") {
  auto r = remove_vertices(generate("complete", {5}), {0, 1});
  CHECK(r.graph.vertex_count() == 3);
  CHECK(r.graph.edge_count() == 3);
  CHECK(r.to_parent == std::vector<std::size_t>{2, 3, 4});
}

TEST_CASE("json round trip and normalization") {
  const Graph g = generate("fig3");
  const Graph h = load_graph(emit_graph(g));
  CHECK(g == h);
  CHECK(fingerprint(g) == fingerprint(h));
  CHECK(fingerprint(g).size() == 64);

  const Graph multi = load_graph(R"({"vertices":["a","b"],"edges":[["a","b"],["a","b"],["a","a"]]})");
  CHECK(multi.vertex_count() == 5);
  CHECK(multi.edge_count() == 6);
  CHECK(betti1(multi) == 2);

  CHECK_THROWS_AS(load_graph(R"({"vertices":["a"],"edges":[["a","z"]]})"), GraphError);
  CHECK_THROWS(load_graph("not json"));
}

TEST_CASE("generators") {
  CHECK(generate("complete", {5}).edge_count() == 10);
  CHECK(generate("bipartite", {3, 4}).edge_count() == 12);
  CHECK(generate("theta").edge_count() == 6);
  CHECK(betti1(generate("theta", {4, 3})) == 3);
  CHECK(generate("fig6").edge_count() == 9);
  CHECK(generate("fig7").edge_count() == 8);
  CHECK(is_circle(generate("cycle", {4})));
  CHECK(betti1(generate("bridge-triangles", {3})) == 2);
  CHECK_THROWS_AS(generate("nope"), GraphError);
  CHECK_THROWS_AS(generate("cycle", {2}), GraphError);
  CHECK(resolve_graph("gen:bipartite:2:3").vertex_count() == 5);
}
