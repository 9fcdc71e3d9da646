#include "gconf/linking.hpp"

namespace gconf {

InducedSubgraph gamma0(const Graph& g, std::size_t u, std::size_t v) {
  if (u >= g.vertex_count() || v >= g.vertex_count()) throw GraphError("vertex out of range");
  if (u == v) throw GraphError("linking needs two distinct vertices");
  return remove_vertices(g, {u, v});
}

namespace {

Graph subdivide_edge(const Graph& g, std::size_t x, std::size_t y) {
  Graph out(0);
  for (const auto& l : g.labels()) out.add_vertex(l);
  const std::size_t skip = *g.edge_index(x, y);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (e != skip) out.add_edge(g.edge(e).a, g.edge(e).b);
  std::string label = g.label(x) + "~" + g.label(y) + ".1";
  while (out.find_vertex(label)) label += "'";
  const std::size_t m = out.add_vertex(label);
  out.add_edge(x, m);
  out.add_edge(m, y);
  out.set_marked(g.marked());
  return out;
}

}  // namespace

LinkingContext::LinkingContext(const Graph& g, std::size_t u, std::size_t v, std::shared_ptr<const QPresentation> q)
    : graph_(g), u_(u), v_(v) {
  g0_ = gamma0(g, u, v);
  if (graph_.adjacent(u, v)) {
    graph_ = subdivide_edge(graph_, u, v);
    subdivided_ = true;
    g0_ = gamma0(graph_, u, v);
    q = nullptr;
  }
  if (!is_connected(graph_)) throw GraphError("linking needs a connected graph");
  q_ = q ? std::move(q) : std::make_shared<const QPresentation>(graph_);

  for (const Chain1& z : cycle_basis_forest(g0_.graph)) {
    Chain1 lifted;
    for (const auto& [e, c] : z.coefficients) {
      const Edge& ed = g0_.graph.edge(e);
      lifted.add(*graph_.edge_index(g0_.to_parent[ed.a], g0_.to_parent[ed.b]), c);
    }
    cycles_.push_back(std::move(lifted));
  }

  path_ = *path_chain(graph_, v_, u_);
  std::vector<bool> avoid(graph_.edge_count(), false);
  for (const auto& [e, c] : path_.coefficients) avoid[e] = true;
  if (auto other = path_chain(graph_, v_, u_, &avoid)) {
    second_path_ = *other;
  } else {
    const auto basis = cycle_basis(graph_);
    second_path_ = basis.empty() ? path_ : path_ + basis.front();
  }
}

IntVector LinkingContext::lift(const Chain1& z, const Chain1& a) const {
  for (const auto& [e, c] : z.coefficients) {
    if (e >= graph_.edge_count()) throw GraphError("chain refers to a missing edge");
    if (graph_.edge(e).touches(u_) || graph_.edge(e).touches(v_))
      throw GraphError("cycle is not supported away from u and v");
  }
  if (!z.is_cycle(graph_)) throw GraphError("linking needs a cycle");
  const auto da = a.boundary(graph_);
  for (std::size_t x = 0; x < da.size(); ++x)
    if (da[x] != (x == u_ ? 1 : 0) - (x == v_ ? 1 : 0)) throw GraphError("connecting chain must have boundary u - v");

  const auto product = product_chain(a, z);
  std::map<ProductCell1, std::int64_t> expected;
  for (const auto& [e, c] : z.coefficients) {
    expected[{true, u_, e}] += c;
    expected[{true, v_, e}] -= c;
  }
  std::erase_if(expected, [](const auto& kv) { return kv.second == 0; });
  if (product_boundary(graph_, product) != expected)
    throw LinalgError("product chain boundary differs from u x z - v x z");

  IntVector x = project_to_relative(q_->complex(), product);
  if (!q_->complex().is_cycle(x)) throw LinalgError("projected product chain is not a relative cycle");
  return x;
}

CokernelElement LinkingContext::linking_class(const Chain1& z, const Chain1& a) const {
  return q_->reduce(lift(z, a));
}

CokernelElement LinkingContext::tau_linking_class(const Chain1& z) const {
  return q_->reduce(q_->complex().tau_apply(lift(z, path_)));
}

CokernelElement linking_class(const Graph& g, std::size_t u, std::size_t v, const Chain1& z) {
  if (g.adjacent(u, v)) throw GraphError("u and v are adjacent; subdivide the edge first");
  return LinkingContext(g, u, v).linking_class(z);
}

LinkingReport linking_report(const LinkingContext& ctx) {
  LinkingReport r;
  r.u = ctx.u();
  r.v = ctx.v();
  r.subdivided = ctx.subdivided();
  if (r.subdivided) r.notes.push_back("edge " + ctx.graph().label(r.u) + "-" + ctx.graph().label(r.v) + " subdivided");
  r.gamma0_b0 = component_count(ctx.g0().graph);
  r.gamma0_cycles = ctx.cycles();
  r.q = ctx.q().group();
  std::vector<IntVector> a_free, both_free;
  for (const auto& z : ctx.cycles()) {
    r.lk_values.push_back(ctx.linking_class(z));
    r.tau_lk_values.push_back(ctx.tau_linking_class(z));
    a_free.push_back(r.lk_values.back().free);
    both_free.push_back(r.lk_values.back().free);
    both_free.push_back(r.tau_lk_values.back().free);
  }
  for (const auto* values : {&r.lk_values, &r.tau_lk_values})
    for (const auto& x : *values)
      for (const auto& t : x.torsion)
        if (t != 0) r.torsion_in_image = true;
  r.A_rank = rank_of_vectors(a_free, r.q.rank);
  r.A_plus_tauA_rank = rank_of_vectors(both_free, r.q.rank);
  if (!r.q.torsion.empty()) r.notes.push_back("Q has torsion; ranks are taken in its free quotient");
  return r;
}

LinkingReport linking_report(const Graph& g, std::size_t u, std::size_t v) {
  return linking_report(LinkingContext(g, u, v));
}

EdgeAdditionReport add_edge_report(const LinkingContext& ctx) {
  EdgeAdditionReport r;
  r.linking = linking_report(ctx);
  r.before = betti_f2(ctx.graph());
  Graph after = ctx.graph();
  after.add_edge(ctx.u(), ctx.v());
  r.after = betti_f2(after);
  r.G_rank = 2 * static_cast<std::int64_t>(r.linking.gamma0_b0) - 2;
  r.X_rank = 2 * static_cast<std::int64_t>(r.linking.gamma0_cycles.size()) -
             static_cast<std::int64_t>(r.linking.A_plus_tauA_rank);
  r.q_identity = static_cast<std::int64_t>(r.after.q_rank) ==
                 static_cast<std::int64_t>(r.before.q_rank) - static_cast<std::int64_t>(r.linking.A_plus_tauA_rank) +
                     r.G_rank;
  r.b2_identity =
      static_cast<std::int64_t>(r.after.b2_config) == static_cast<std::int64_t>(r.before.b2_config) + r.X_rank;
  r.consistency = r.q_identity && r.b2_identity;
  if (!r.before.q_torsion.empty() || !r.after.q_torsion.empty()) r.flags.push_back("torsion in Q");
  if (r.linking.torsion_in_image) r.flags.push_back("torsion in the linking image");
  return r;
}

EdgeAdditionReport add_edge_report(const Graph& g, std::size_t u, std::size_t v) {
  if (is_arc(g) || is_circle(g)) throw GraphError("edge addition report needs a graph that is not an arc or circle");
  return add_edge_report(LinkingContext(g, u, v));
}

namespace {

// Betti numbers with a single point allowed (its configuration space is empty).
BettiReport betti_or_point(const Graph& g) {
  if (g.vertex_count() == 1 && g.edge_count() == 0) {
    BettiReport r;
    r.b0_config = 0;
    return r;
  }
  return betti_f2(g);
}

}  // namespace

EnlargementReport pendant_report(const Graph& g, std::size_t v) {
  if (v >= g.vertex_count()) throw GraphError("vertex out of range");
  if (g.edge_count() == 0) throw GraphError("pendant report needs a graph with an edge");
  if (is_arc(g)) throw GraphError("pendant report is not defined for an arc");
  EnlargementReport r;
  r.before = betti_f2(g);
  Graph after = g;
  std::string label = g.label(v) + "+";
  while (after.find_vertex(label)) label += "+";
  after.add_edge(v, after.add_vertex(label));
  r.after = betti_f2(after);
  r.expected_b1_delta = 2 * static_cast<std::int64_t>(g.degree(v)) - 2;
  r.expected_b2 = static_cast<std::int64_t>(r.before.b2_config);
  r.holds = static_cast<std::int64_t>(r.after.b2_config) == r.expected_b2 &&
            static_cast<std::int64_t>(r.after.b1_config) ==
                static_cast<std::int64_t>(r.before.b1_config) + r.expected_b1_delta;
  return r;
}

EnlargementReport bridge_report(const Graph& g1, const Graph& g2, std::size_t u, std::size_t v) {
  if (u >= g1.vertex_count() || v >= g2.vertex_count()) throw GraphError("vertex out of range");
  if (!is_connected(g1) || !is_connected(g2)) throw GraphError("bridge report needs connected parts");
  EnlargementReport r;
  r.before = betti_or_point(g1);
  r.before_second = betti_or_point(g2);
  Graph after = disjoint_union(g1, g2);
  after.add_edge(u, g1.vertex_count() + v);
  r.after = betti_f2(after);
  r.expected_b2 = static_cast<std::int64_t>(r.before.b2_config + r.before_second->b2_config +
                                            2 * r.before.b1_graph * r.before_second->b1_graph);
  r.holds = static_cast<std::int64_t>(r.after.b2_config) == r.expected_b2;
  return r;
}

nlohmann::json to_json(const Graph& g, const Chain1& z) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [e, c] : z.coefficients) out.push_back({g.label(g.edge(e).a), g.label(g.edge(e).b), c});
  return out;
}

nlohmann::json to_json(const LinkingReport& r, const Graph& g) {
  nlohmann::json j;
  j["u"] = g.label(r.u);
  j["v"] = g.label(r.v);
  j["subdivided"] = r.subdivided;
  j["notes"] = r.notes;
  j["gamma0_b0"] = r.gamma0_b0;
  nlohmann::json cycles = nlohmann::json::array(), lk = nlohmann::json::array(), tlk = nlohmann::json::array();
  for (std::size_t i = 0; i < r.gamma0_cycles.size(); ++i) {
    cycles.push_back(to_json(g, r.gamma0_cycles[i]));
    lk.push_back(to_json(r.lk_values[i]));
    tlk.push_back(to_json(r.tau_lk_values[i]));
  }
  j["gamma0_cycles"] = cycles;
  j["q"] = to_json(r.q);
  j["lk_values"] = lk;
  j["tau_lk_values"] = tlk;
  j["A_rank"] = r.A_rank;
  j["A_plus_tauA_rank"] = r.A_plus_tauA_rank;
  j["torsion_in_image"] = r.torsion_in_image;
  return j;
}

nlohmann::json to_json(const EdgeAdditionReport& r, const Graph& g) {
  nlohmann::json j;
  j["before"] = to_json(r.before);
  j["after"] = to_json(r.after);
  j["linking"] = to_json(r.linking, g);
  j["G_rank"] = r.G_rank;
  j["X_rank"] = r.X_rank;
  j["q_identity"] = r.q_identity;
  j["b2_identity"] = r.b2_identity;
  j["consistency"] = r.consistency;
  j["flags"] = r.flags;
  return j;
}

}  // namespace gconf
