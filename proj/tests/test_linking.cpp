#include <doctest.h>

#include "gconf/catalog.hpp"
#include "gconf/linking.hpp"

using namespace gconf;

namespace {

// Two triangles, each with one vertex joined to u and another joined to v.
Graph two_component_gamma0() {
  Graph g(0);
  for (const char* l : {"u", "v", "a1", "a2", "a3", "b1", "b2", "b3"}) g.add_vertex(l);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.add_edge(2, 4);
  g.add_edge(5, 6);
  g.add_edge(6, 7);
  g.add_edge(5, 7);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(0, 5);
  g.add_edge(1, 6);
  return g;
}

// Triangle a b c with the pendant path c - p - u - q - v.
Graph far_pair() {
  Graph g(0);
  for (const char* l : {"a", "b", "c", "p", "u", "q", "v"}) g.add_vertex(l);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 6);
  return g;
}

bool same(const QPresentation& q, const CokernelElement& a, const CokernelElement& b) {
  return q.add(a, q.negate(b)).is_zero();
}

}  // namespace

TEST_CASE("gamma0 examples") {
  const Graph f3 = generate("fig3");
  const auto g0 = gamma0(f3, f3.marked()->u, f3.marked()->v);
  CHECK(g0.graph.vertex_count() == 3);
  CHECK(g0.graph.edge_count() == 3);
  CHECK(gamma0(generate("complete", {5}), 1, 3).graph.edge_count() == 3);
  // a - u - b - v - c
  Graph p = generate("path", {4});
  const auto iso = gamma0(p, 1, 3);
  CHECK(iso.graph.vertex_count() == 3);
  CHECK(iso.graph.edge_count() == 0);
  CHECK_THROWS_AS(gamma0(p, 1, 1), GraphError);
  CHECK_THROWS_AS(gamma0(p, 1, 9), GraphError);
}

TEST_CASE("fig3 linking is nontrivial") {
  const Graph g = generate("fig3");
  LinkingContext ctx(g, g.marked()->u, g.marked()->v);
  REQUIRE(ctx.cycles().size() == 1);
  CHECK_FALSE(ctx.linking_class(ctx.cycles()[0]).is_zero());
  CHECK_FALSE(linking_class(g, g.marked()->u, g.marked()->v, ctx.cycles()[0]).is_zero());
}

TEST_CASE("cycle far from the connecting path links trivially") {
  const Graph g = far_pair();
  LinkingContext ctx(g, 4, 6);
  REQUIRE(ctx.cycles().size() == 1);
  CHECK(ctx.linking_class(ctx.cycles()[0]).is_zero());
}

TEST_CASE("two components joined to both vertices link trivially") {
  const auto r = linking_report(two_component_gamma0(), 0, 1);
  CHECK(r.gamma0_b0 == 2);
  CHECK(r.lk_values.size() == 2);
  for (const auto& x : r.lk_values) CHECK(x.is_zero());
  CHECK(r.A_rank == 0);
}

TEST_CASE("fig6 and fig7 images") {
  const Graph f6 = generate("fig6");
  const auto r6 = linking_report(f6, f6.marked()->u, f6.marked()->v);
  CHECK(r6.A_rank == 1);
  CHECK(r6.A_plus_tauA_rank == 1);
  const Graph f7 = generate("fig7");
  const auto r7 = linking_report(f7, f7.marked()->u, f7.marked()->v);
  CHECK(r7.A_rank == 1);
}

TEST_CASE("linking errors") {
  const Graph g = generate("fig3");
  LinkingContext ctx(g, g.marked()->u, g.marked()->v);
  Chain1 not_cycle;
  not_cycle.add(0, 1);
  CHECK_THROWS_AS(ctx.linking_class(not_cycle), GraphError);
  Chain1 touching;  // edge p-v touches v
  touching.add(3, 1);
  CHECK_THROWS_AS(ctx.linking_class(touching), GraphError);
  CHECK_THROWS_AS(linking_class(generate("complete", {5}), 0, 1, Chain1{}), GraphError);
}

TEST_CASE("adjacent vertices are separated by subdivision") {
  const Graph k5 = generate("complete", {5});
  LinkingContext ctx(k5, 0, 1);
  CHECK(ctx.subdivided());
  CHECK_FALSE(ctx.graph().adjacent(0, 1));
  CHECK(ctx.graph().vertex_count() == 6);
  const auto r = linking_report(ctx);
  CHECK(r.notes.size() == 1);
}

TEST_CASE("path independence, antisymmetry and additivity on the catalog") {
  for (const auto& entry : standard_catalog()) {
    const Graph& g = entry.graph;
    if (is_arc(g) || is_circle(g)) continue;
    CAPTURE(entry.spec);
    auto q = std::make_shared<const QPresentation>(g);
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
      for (std::size_t v = u + 1; v < g.vertex_count(); ++v) {
        if (g.adjacent(u, v)) continue;
        CAPTURE(u);
        CAPTURE(v);
        LinkingContext vu(g, u, v, q), uv(g, v, u, q);
        const auto& zs = vu.cycles();
        for (const auto& z : zs) {
          const auto a = vu.linking_class(z);
          CHECK(same(*q, a, vu.linking_class(z, vu.second_path())));
          CHECK(same(*q, a, q->negate(uv.linking_class(z))));
        }
        for (std::size_t i = 0; i + 1 < zs.size(); ++i) {
          const auto sum = vu.linking_class(zs[i] + zs[i + 1]);
          CHECK(same(*q, sum, q->add(vu.linking_class(zs[i]), vu.linking_class(zs[i + 1]))));
        }
      }
  }
}

TEST_CASE("edge addition on fig6 and fig7") {
  for (const char* name : {"fig6", "fig7"}) {
    const Graph g = generate(name);
    const auto r = add_edge_report(g, g.marked()->u, g.marked()->v);
    CAPTURE(name);
    CHECK(r.after.q_rank == 0);
    CHECK(*r.after.mature);
    CHECK(r.linking.A_plus_tauA_rank == 1);
    CHECK(r.consistency);
  }
  const Graph f6 = generate("fig6");
  const auto r = add_edge_report(f6, 0, 1);
  CHECK(r.before.b2_config == 0);
  CHECK(r.after.b2_config == 1);
  CHECK(r.X_rank == 1);
  CHECK(r.G_rank == 0);
}

TEST_CASE("bookkeeping identities on every non-adjacent catalog pair") {
  for (const auto& entry : standard_catalog()) {
    const Graph& g = entry.graph;
    if (is_arc(g) || is_circle(g)) continue;
    CAPTURE(entry.spec);
    auto q = std::make_shared<const QPresentation>(g);
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
      for (std::size_t v = u + 1; v < g.vertex_count(); ++v) {
        if (g.adjacent(u, v)) continue;
        CAPTURE(u);
        CAPTURE(v);
        const auto r = add_edge_report(LinkingContext(g, u, v, q));
        CHECK(r.q_identity);
        CHECK(r.b2_identity);
      }
  }
}

TEST_CASE("mature graphs stay mature after a connected edge addition") {
  const Graph k5 = subdivide(generate("complete", {5}), 1);
  // two subdivision vertices on disjoint edges
  const std::size_t x = 5, y = 5 + 9;
  REQUIRE(!k5.adjacent(x, y));
  REQUIRE(is_connected(gamma0(k5, x, y).graph));
  const auto r = add_edge_report(k5, x, y);
  CHECK(*r.before.mature);
  CHECK(*r.after.mature);
  CHECK(r.consistency);
}

TEST_CASE("pendant and bridge enlargements") {
  const auto p = pendant_report(generate("cycle", {3}), 1);
  CHECK(p.before.b1_config == 1);
  CHECK(p.after.b1_config == 3);
  CHECK(p.after.b2_config == p.before.b2_config);
  CHECK(p.holds);
  const auto t = pendant_report(generate("star", {3}), 2);
  CHECK(t.after.b2_config == 0);
  CHECK(t.holds);
  CHECK_THROWS_AS(pendant_report(generate("path", {2}), 0), GraphError);

  const Graph tri = generate("cycle", {3});
  const auto b = bridge_report(tri, tri, 0, 0);
  CHECK(b.after.b2_config == 2);
  CHECK(b.expected_b2 == 2);
  CHECK(b.holds);
  CHECK(bridge_report(generate("complete", {5}), Graph(1), 0, 0).holds);

  for (const auto& entry : standard_catalog()) {
    const Graph& g = entry.graph;
    if (is_arc(g)) continue;
    CAPTURE(entry.spec);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) CHECK(pendant_report(g, v).holds);
  }
}
