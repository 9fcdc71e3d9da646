#include "gconf/dspace.hpp"

#include <algorithm>
#include <map>

namespace gconf {

CellComplex2 build_dspace(const Graph& input, std::size_t subdivisions) {
  CellComplex2 c;
  c.graph = subdivisions ? subdivide(input, subdivisions) : input;
  const Graph& g = c.graph;
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();

  std::vector<std::size_t> index0(n * n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (v != w) {
        index0[v * n + w] = c.cells0.size();
        c.cells0.emplace_back(v, w);
      }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> vertex_edge, edge_vertex;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t e = 0; e < m; ++e)
      if (!g.edge(e).touches(v)) {
        vertex_edge[{v, e}] = c.cells1.size();
        c.cells1.emplace_back(v, e);
      }
  c.vertex_first_count = c.cells1.size();
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t w = 0; w < n; ++w)
      if (!g.edge(e).touches(w)) {
        edge_vertex[{e, w}] = c.cells1.size();
        c.cells1.emplace_back(w, e);
      }

  c.boundary1 = SparseMatrix(c.cells0.size(), 0);
  for (std::size_t i = 0; i < c.cells1.size(); ++i) {
    const auto [x, e] = c.cells1[i];
    const Edge& ed = g.edge(e);
    std::vector<SparseMatrix::Entry> col;
    if (i < c.vertex_first_count) {
      col = {{index0[x * n + ed.b], 1}, {index0[x * n + ed.a], -1}};
    } else {
      col = {{index0[ed.b * n + x], 1}, {index0[ed.a * n + x], -1}};
    }
    std::sort(col.begin(), col.end());
    c.boundary1.push_column(std::move(col));
  }

  c.boundary2 = SparseMatrix(c.cells1.size(), 0);
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f) {
      const Edge& x = g.edge(e);
      const Edge& y = g.edge(f);
      if (x.touches(y.a) || x.touches(y.b)) continue;
      c.cells2.emplace_back(e, f);
      std::vector<SparseMatrix::Entry> col = {{edge_vertex.at({e, y.b}), -1},
                                              {edge_vertex.at({e, y.a}), 1},
                                              {vertex_edge.at({x.b, f}), 1},
                                              {vertex_edge.at({x.a, f}), -1}};
      std::sort(col.begin(), col.end());
      c.boundary2.push_column(std::move(col));
    }
  return c;
}

HomologyReport homology(const CellComplex2& c) {
  if (!(c.boundary1 * c.boundary2).is_zero()) throw LinalgError("boundary maps do not compose to zero");
  HomologyReport h;
  h.cells0 = c.cells0.size();
  h.cells1 = c.cells1.size();
  h.cells2 = c.cells2.size();
  const auto d1 = invariant_factors(c.boundary1);
  const auto d2 = invariant_factors(c.boundary2);
  h.b0 = h.cells0 - d1.rank;
  h.b1 = h.cells1 - d1.rank - d2.rank;
  h.b2 = h.cells2 - d2.rank;
  h.torsion1 = d2.torsion();
  return h;
}

Verdict verify(const Graph& g, std::size_t subdivisions) {
  Verdict v;
  v.oracle = homology(build_dspace(g, subdivisions));
  v.formula = betti_f2(g);
  auto check = [&](const std::string& what, const std::string& oracle, const std::string& formula) {
    if (oracle != formula) v.mismatches.push_back(what + ": oracle " + oracle + ", formula " + formula);
  };
  auto str = [](const IntVector& t) {
    std::string s = "[";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i].get_str();
    return s + "]";
  };
  IntVector q_torsion;
  std::size_t b2_expected = v.formula.b2_config;
  if (v.formula.special_case == SpecialCase::none) {
    const QPresentation q(g);
    v.q = q.group();
    v.form_kernel_rank = q.form().matrix.cols() - rank(q.form().matrix);
    q_torsion = v.q.torsion;
    b2_expected = v.form_kernel_rank;
    check("q rank", std::to_string(v.q.rank), std::to_string(v.formula.q_rank));
    check("q torsion", str(v.q.torsion), str(v.formula.q_torsion));
    check("b2 (kernel of the form)", std::to_string(v.form_kernel_rank), std::to_string(v.formula.b2_config));
  }
  check("b0", std::to_string(v.oracle.b0), std::to_string(v.formula.b0_config));
  check("b1", std::to_string(v.oracle.b1), std::to_string(v.formula.b1_config));
  check("b2", std::to_string(v.oracle.b2), std::to_string(b2_expected));
  check("H1 torsion", str(v.oracle.torsion1), str(q_torsion));
  return v;
}

nlohmann::json to_json(const HomologyReport& h) {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& x : h.torsion1) t.push_back(x.fits_slong_p() ? nlohmann::json(x.get_si()) : nlohmann::json(x.get_str()));
  return {{"b0", h.b0}, {"b1", h.b1},         {"b2", h.b2},         {"torsion1", t},
          {"cells0", h.cells0}, {"cells1", h.cells1}, {"cells2", h.cells2}};
}

nlohmann::json to_json(const Verdict& v) {
  return {{"match", v.match()},
          {"mismatches", v.mismatches},
          {"oracle", to_json(v.oracle)},
          {"formula", to_json(v.formula)},
          {"form_kernel_rank", v.form_kernel_rank}};
}

}  // namespace gconf
