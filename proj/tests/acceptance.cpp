// One PASS/FAIL line per acceptance criterion.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "gconf/catalog.hpp"
#include "gconf/dspace.hpp"
#include "gconf/experiments.hpp"
#include "gconf/graph_io.hpp"
#include "gconf/intersection.hpp"
#include "gconf/linking.hpp"
#include "gconf/neighborhood.hpp"

using namespace gconf;

namespace {

struct Outcome {
  std::vector<std::string> failures;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool not_mature(const Graph& g) {
  const auto r = betti_f2(g);
  return !r.mature.value_or(false);
}

Graph far_pair() {
  Graph g(0);
  for (const char* l : {"a", "b", "c", "p", "u", "q", "v"}) g.add_vertex(l);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}})
    g.add_edge(a, b);
  return g;
}

// u and v each joined to two disjoint triangles, so Gamma0 is disconnected
Graph split_gamma0() {
  Graph g(0);
  for (const char* l : {"u", "v", "a1", "a2", "a3", "b1", "b2", "b3"}) g.add_vertex(l);
  for (auto [a, b] : std::vector<std::pair<int, int>>{
           {2, 3}, {3, 4}, {2, 4}, {5, 6}, {6, 7}, {5, 7}, {0, 2}, {1, 3}, {0, 5}, {1, 6}})
    g.add_edge(a, b);
  return g;
}

bool same(const QPresentation& q, const CokernelElement& a, const CokernelElement& b) {
  return q.add(a, q.negate(b)).is_zero();
}

Outcome criterion1() {
  Outcome o;
  double worst = 0;
  auto timed = [&](const std::string& name, const Graph& g, bool want_mature) {
    const auto t0 = Clock::now();
    const bool mature = !not_mature(g);
    const double s = seconds_since(t0);
    worst = std::max(worst, s);
    o.require(mature == want_mature, name + (want_mature ? " should be mature" : " should not be mature"));
    o.require(s < 1.0, fmt::format("{} took {:.2f}s", name, s));
  };
  timed("K5", generate("complete", {5}), true);
  timed("K3,3", generate("bipartite", {3, 3}), true);
  timed("K4", generate("complete", {4}), false);
  for (const char* name : {"fig6", "fig7", "wedge-triangles", "doublewedge-squares", "bridge-triangles"})
    timed(name, generate(name), false);
  for (long n = 3; n <= 10; ++n) timed(fmt::format("C{}", n), generate("cycle", {n}), false);
  std::size_t trees = 0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (const auto& g : enumerate_graphs(n))
      if (is_connected(g) && g.edge_count() + 1 == n) {
        ++trees;
        timed(fmt::format("tree {}", emit_graph(g)), g, false);
      }
  o.note = fmt::format("{} trees, slowest {:.3f}s", trees, worst);
  return o;
}

Outcome criterion2() {
  Outcome o;
  struct Case {
    std::string spec;
    std::size_t b1, b2;
  };
  const std::vector<Case> cases = {{"gen:complete:5", 12, 1},     {"gen:complete:6", 20, 19},
                                   {"gen:complete:7", 30, 71},     {"gen:bipartite:3:3", 8, 1},
                                   {"gen:bipartite:3:4", 12, 5},   {"gen:bipartite:4:4", 18, 25}};
  double k7 = 0;
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    const auto r = betti_f2(resolve_graph(c.spec));
    const double s = seconds_since(t0);
    if (c.spec == "gen:complete:7") k7 = s;
    o.require(r.b1_config == c.b1 && r.b2_config == c.b2,
              fmt::format("{}: got ({}, {}) want ({}, {})", c.spec, r.b1_config, r.b2_config, c.b1, c.b2));
  }
  o.require(k7 < 60, fmt::format("K7 took {:.1f}s", k7));
  o.note = fmt::format("K7 {:.2f}s", k7);
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::size_t graphs = 0;
  for (const auto& entry : standard_catalog())
    for (std::size_t k : {0u, 1u}) {
      const Graph g = subdivide(entry.graph, k);
      const auto v = verify(g);
      ++graphs;
      for (const auto& m : v.mismatches) o.failures.push_back(fmt::format("{} sub{}: {}", entry.spec, k, m));
    }
  o.note = fmt::format("{} graphs", graphs);
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto q = [](const char* spec) { return q_group(resolve_graph(spec)).group(); };
  const auto f6 = q("gen:fig6"), f7 = q("gen:fig7"), star = q("gen:star:3");
  o.require(f6.rank == 1 && f6.torsion.empty(), "Q(fig6) = " + f6.to_string());
  o.require(f7.rank == 1 && f7.torsion.empty(), "Q(fig7) = " + f7.to_string());
  o.require(star.rank == 1, "Q(star) = " + star.to_string());
  o.require(q("gen:complete:5").trivial(), "Q(K5) nonzero");
  o.require(q("gen:bipartite:3:3").trivial(), "Q(K3,3) nonzero");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const Graph f3 = generate("fig3");
  LinkingContext c3(f3, f3.marked()->u, f3.marked()->v);
  o.require(c3.cycles().size() == 1 && !c3.linking_class(c3.cycles()[0]).is_zero(), "fig3 linking is zero");
  LinkingContext far(far_pair(), 4, 6);
  o.require(far.cycles().size() == 1 && far.linking_class(far.cycles()[0]).is_zero(), "far cycle links");
  const auto split = linking_report(split_gamma0(), 0, 1);
  o.require(split.gamma0_b0 == 2 && split.A_rank == 0, "disconnected Gamma0 links");

  std::size_t pairs = 0, adjacent = 0, checks = 0;
  auto check_pair = [&](const Graph& h, std::size_t u, std::size_t v, const std::shared_ptr<const QPresentation>& q,
                        const std::string& where) {
    LinkingContext vu(h, u, v, q), uv(h, v, u, q);
    const auto& zs = vu.cycles();
    for (const auto& z : zs) {
      const auto a = vu.linking_class(z);
      o.require(same(*q, a, vu.linking_class(z, vu.second_path())), where + " path dependence");
      o.require(same(*q, a, q->negate(uv.linking_class(z))), where + " not antisymmetric");
      checks += 2;
    }
    for (std::size_t i = 0; i + 1 < zs.size(); ++i) {
      const auto sum = vu.linking_class(zs[i] + zs[i + 1]);
      o.require(same(*q, sum, q->add(vu.linking_class(zs[i]), vu.linking_class(zs[i + 1]))), where + " not additive");
      ++checks;
    }
  };
  for (const auto& entry : standard_catalog())
    for (std::size_t k : {0u, 1u}) {
      const Graph g = subdivide(entry.graph, k);
      if (is_arc(g) || is_circle(g)) continue;
      auto q = std::make_shared<const QPresentation>(g);
      for (std::size_t u = 0; u < g.vertex_count(); ++u)
        for (std::size_t v = u + 1; v < g.vertex_count(); ++v) {
          const std::string where = fmt::format("{} sub{} ({},{})", entry.spec, k, u, v);
          if (g.adjacent(u, v)) {
            // the edge uv is subdivided once so that the pair can be linked
            const Graph h = LinkingContext(g, u, v).graph();
            ++adjacent;
            check_pair(h, u, v, std::make_shared<const QPresentation>(h), where);
          } else {
            ++pairs;
            check_pair(g, u, v, q, where);
          }
        }
    }
  o.note = fmt::format("{} non-adjacent + {} adjacent pairs, {} checks", pairs, adjacent, checks);
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t pairs = 0;
  for (const auto& entry : standard_catalog())
    for (std::size_t k : {0u, 1u}) {
      const Graph g = subdivide(entry.graph, k);
      if (is_arc(g) || is_circle(g)) continue;
      auto q = std::make_shared<const QPresentation>(g);
      for (std::size_t u = 0; u < g.vertex_count(); ++u)
        for (std::size_t v = u + 1; v < g.vertex_count(); ++v) {
          if (g.adjacent(u, v)) continue;
          ++pairs;
          const auto r = add_edge_report(LinkingContext(g, u, v, q));
          const std::string where = fmt::format("{} sub{} ({},{})", entry.spec, k, u, v);
          o.require(r.q_identity, where + " rank identity");
          o.require(r.b2_identity, where + " b2 delta");
        }
    }
  for (const char* name : {"fig6", "fig7"}) {
    const Graph g = generate(name);
    const auto r = add_edge_report(g, g.marked()->u, g.marked()->v);
    o.require(r.after.q_rank == 0 && r.after.q_torsion.empty(), std::string(name) + "+e has nonzero Q");
    o.require(r.linking.A_plus_tauA_rank == 1, fmt::format("{}: rk(A+tauA) = {}", name, r.linking.A_plus_tauA_rank));
  }
  for (auto [name, target] : std::vector<std::pair<std::string, std::string>>{{"fig6", "gen:complete:5"},
                                                                           {"fig7", "gen:bipartite:3:3"}}) {
    Graph g = generate(name);
    g.add_edge(g.marked()->u, g.marked()->v);
    const auto want = betti_f2(resolve_graph(target)), got = betti_f2(g);
    o.require(g.edge_count() == resolve_graph(target).edge_count() && got.b1_config == want.b1_config &&
                  got.b2_config == want.b2_config && *got.mature,
              name + "+e does not match " + target);
  }
  o.note = fmt::format("{} pairs", pairs);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto p = pendant_report(generate("cycle", {3}), 0);
  o.require(p.before.b1_config == 1 && p.after.b1_config == 3,
            fmt::format("pendant b1 {} -> {}", p.before.b1_config, p.after.b1_config));
  o.require(p.before.b2_config == p.after.b2_config, "pendant changed b2");
  o.require(p.holds, "pendant prediction");
  const Graph tri = generate("cycle", {3});
  const auto b = bridge_report(tri, tri, 0, 0);
  o.require(b.after.b2_config == 2, fmt::format("bridge b2 = {}", b.after.b2_config));
  o.require(b.holds, "bridge prediction");
  const auto oracle = homology(build_dspace(generate("bridge-triangles")));
  o.require(oracle.b2 == 2, fmt::format("oracle bridge b2 = {}", oracle.b2));
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t graphs = 0;
  for (const auto& entry : standard_catalog()) {
    const Graph& g = entry.graph;
    const auto base = betti_f2(g);
    for (std::size_t k : {1u, 2u}) {
      const auto r = betti_f2(subdivide(g, k));
      const std::string where = fmt::format("{} sub{}", entry.spec, k);
      o.require(r.mature == base.mature, where + " maturity changed");
      o.require(r.q_rank == base.q_rank && r.q_torsion == base.q_torsion, where + " Q changed");
      o.require(r.b1_config == base.b1_config && r.b2_config == base.b2_config, where + " Betti numbers changed");
    }
    if (is_circle(g) || is_arc(g)) continue;
    ++graphs;
    RelativeComplex rc(g);
    const auto expected = static_cast<std::int64_t>(betti1(g)) - 1 + sigma(g);
    o.require(static_cast<std::int64_t>(rc.h2_rank()) == expected,
              fmt::format("{}: rank {} want {}", entry.spec, rc.h2_rank(), expected));
    const auto f = build_form(rc);
    const std::size_t b = f.cycles.size();
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j) {
        IntVector s = rc.tau_apply(f.matrix.column(j * b + i));
        const IntVector x = f.matrix.column(i * b + j);
        bool zero = true;
        for (std::size_t t = 0; t < s.size(); ++t) zero = zero && s[t] + x[t] == 0;
        o.require(zero, fmt::format("{}: I({},{}) not antisymmetric under tau", entry.spec, i, j));
      }
  }
  o.note = fmt::format("rank identity on {} graphs; circles excluded", graphs);
  return o;
}

Outcome criterion9(const std::string& archive) {
  Outcome o;
  ScanConfig cfg;
  cfg.n_max = 10;
  cfg.samples = 1000;
  cfg.seed = 1;
  const auto r = conjecture_scan(cfg);
  std::size_t torsion = 0, c1 = 0, mismatch = 0;
  for (const auto& f : r.findings) {
    torsion += f.kind == "torsion";
    c1 += f.kind == "conjecture1-counterexample";
    mismatch += f.kind == "oracle-mismatch";
  }
  o.require(torsion == 0, fmt::format("{} torsion findings", torsion));
  o.require(mismatch == 0, fmt::format("{} oracle mismatches", mismatch));
  if (!r.findings.empty()) {
    std::filesystem::remove_all(archive);
    write_findings(archive, r.findings, {{"n_max", 10}, {"samples", 1000}, {"seed", 1}});
    std::ifstream in(std::filesystem::path(archive) / "manifest.json");
    const auto manifest = nlohmann::json::parse(in);
    o.require(manifest["count"] == r.findings.size(), "manifest count");
    for (const auto& entry : manifest["findings"]) {
      std::ifstream doc_in(std::filesystem::path(archive) / entry["file"].get<std::string>());
      const auto doc = nlohmann::json::parse(doc_in);
      const Finding f{doc["kind"], graph_from_json(doc["graph"]), doc["details"], {}};
      o.require(reproduces(f), "archived finding does not reproduce: " + entry["file"].get<std::string>());
    }
  }

  SweepConfig s;
  s.n = 7;
  s.p_grid = {0.3, 0.5, 0.7, 0.9};
  s.samples_per_p = 100;
  s.seed = 99;
  const auto a = to_csv(maturity_sweep(s).records);
  s.threads = 4;
  const auto b = to_csv(maturity_sweep(s).records);
  o.require(a == b, "sweep CSV differs between identical runs");

  std::size_t unexplained = 0;
  for (const auto& f : r.findings) unexplained += f.kind == "conjecture1-counterexample" && f.explained_by.empty();
  o.note = fmt::format("{} exhaustive + {} random tested, {} conjecture-1 findings archived ({} unexplained)",
                       r.exhaustive_tested, r.random_tested, c1, unexplained);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string archive = argc > 1 ? argv[1] : "acceptance_findings";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"named-graph maturity", criterion1},
      {"closed-form Betti numbers", criterion2},
      {"oracle equivalence", criterion3},
      {"Q values", criterion4},
      {"linking", criterion5},
      {"edge-addition bookkeeping", criterion6},
      {"enlargements", criterion7},
      {"structural identities", criterion8},
      {"conjecture scans", [&] { return criterion9(archive); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = o.failures.empty();
    all = all && ok;
    std::cout << fmt::format("criterion {}: {} {} ({:.1f}s){}\n", i + 1, ok ? "PASS" : "FAIL", criteria[i].first,
                             seconds_since(t0), o.note.empty() ? "" : "  " + o.note);
    for (std::size_t k = 0; k < o.failures.size() && k < 10; ++k) std::cout << "    " << o.failures[k] << "\n";
    if (o.failures.size() > 10) std::cout << "    ... " << o.failures.size() - 10 << " more\n";
    std::cout << std::flush;
  }
  return all ? 0 : 1;
}
