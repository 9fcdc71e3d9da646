#include "gconf/intersection.hpp"

#include "gconf/structure.hpp"

namespace gconf {

namespace {

void require_cycle(const Graph& g, const Chain1& z) {
  for (const auto& [e, c] : z.coefficients)
    if (e >= g.edge_count()) throw GraphError("chain refers to a missing edge");
  if (!z.is_cycle(g)) throw GraphError("intersection form needs cycles");
}

void require_simple_domain(const Graph& g) {
  if (g.edge_count() == 0) throw GraphError("configuration space of a point is empty");
  if (!is_connected(g)) throw GraphError("graph must be connected");
}

std::vector<SparseMatrix::Entry> form_column(const RelativeComplex& rc, const Chain1& z, const Chain1& zp) {
  std::map<std::size_t, std::int64_t> col;
  const Graph& g = rc.graph();
  for (const auto& [e, n] : z.coefficients)
    for (const auto& [f, m] : zp.coefficients)
      if (g.closures_meet(e, f)) col[*rc.index2(e, f)] += n * m;
  std::vector<SparseMatrix::Entry> out;
  for (const auto& [r, c] : col)
    if (c != 0) out.emplace_back(r, c);
  return out;
}

}  // namespace

IntVector intersection_chain(const RelativeComplex& rc, const Chain1& z, const Chain1& zp) {
  require_cycle(rc.graph(), z);
  require_cycle(rc.graph(), zp);
  IntVector out(rc.basis2().size());
  for (const auto& [r, c] : form_column(rc, z, zp)) out[r] = c;
  return out;
}

IntVector intersection_chain(const Graph& g, const Chain1& z, const Chain1& zp) {
  return intersection_chain(RelativeComplex(g, true), z, zp);
}

SparseMatrix build_form_sparse(const RelativeComplex& rc, const std::vector<Chain1>& cycles) {
  SparseMatrix m(rc.basis2().size(), 0);
  for (const auto& z : cycles)
    for (const auto& zp : cycles) m.push_column(form_column(rc, z, zp));
  return m;
}

IntersectionForm build_form(const RelativeComplex& rc) {
  IntersectionForm f;
  f.cycles = cycle_basis(rc.graph());
  for (std::size_t i = 0; i < f.cycles.size(); ++i)
    for (std::size_t j = 0; j < f.cycles.size(); ++j) f.domain_basis.emplace_back(i, j);
  f.matrix = build_form_sparse(rc, f.cycles).to_dense();
  return f;
}

QPresentation::QPresentation(const Graph& g) {
  require_simple_domain(g);
  if (is_arc(g) || is_circle(g)) throw GraphError("Q is not defined here for arcs and circles");
  rc_ = std::make_shared<const RelativeComplex>(g);
  form_ = build_form(*rc_);
  h2_ = std::make_shared<const LatticeSolver>(rc_->h2_basis());
  std::vector<IntVector> cols;
  for (std::size_t c = 0; c < form_.matrix.cols(); ++c) {
    auto coords = h2_->solve(form_.matrix.column(c));
    if (!coords) throw LinalgError("intersection form column is not a relative cycle");
    cols.push_back(std::move(*coords));
  }
  coker_ = std::make_shared<const Cokernel>(IntMatrix::from_columns(rc_->h2_rank(), cols));
}

CokernelElement QPresentation::reduce(const IntVector& x) const {
  auto coords = h2_->solve(x);
  if (!coords) throw NotInLattice("chain is not a relative 2-cycle");
  return coker_->reduce(*coords);
}

QPresentation q_group(const Graph& g) { return QPresentation(g); }

QInvariants q_invariants(const Graph& g) {
  require_simple_domain(g);
  if (is_arc(g) || is_circle(g)) throw GraphError("Q is not defined here for arcs and circles");
  const RelativeComplex rc(g, true);
  const auto inv = invariant_factors(build_form_sparse(rc, cycle_basis(g)));
  QInvariants q;
  q.h2_rank = rc.h2_rank();
  q.form_rank = inv.rank;
  q.rank = q.h2_rank - q.form_rank;
  q.torsion = inv.torsion();
  return q;
}

std::string to_string(SpecialCase s) {
  switch (s) {
    case SpecialCase::arc:
      return "arc";
    case SpecialCase::circle:
      return "circle";
    default:
      return "none";
  }
}

namespace {

std::vector<std::string> detector_reasons(const Graph& g) {
  const StructureReport s = structure(g);
  std::vector<std::string> r;
  if (!s.univalent_vertices.empty()) r.push_back("univalent vertex " + g.label(s.univalent_vertices.front()));
  if (s.separating_edge) {
    const Edge& e = s.host.edge(*s.separating_edge);
    r.push_back("removing the closed edge " + s.host.label(e.a) + "-" + s.host.label(e.b) + " disconnects");
  }
  if (s.double_edge) r.push_back("double edge");
  if (s.wedge) r.push_back("wedge at " + s.wedge->cut_description[0]);
  if (s.double_wedge)
    r.push_back("double wedge at " + s.double_wedge->cut_description[0] + " and " +
                s.double_wedge->cut_description[1]);
  if (s.planar && betti1(g) > 0) r.push_back("planar");
  return r;
}

Maturity maturity_from(const Graph& g, const QInvariants& q) {
  Maturity m;
  m.mature = q.rank == 0 && q.torsion.empty();
  if (!m.mature) {
    m.reasons.push_back("Q = " + AbelianPresentation{q.rank, q.torsion}.to_string());
    for (auto& r : detector_reasons(g)) m.reasons.push_back(std::move(r));
  }
  return m;
}

}  // namespace

Maturity is_mature(const Graph& g) {
  require_simple_domain(g);
  if (is_arc(g)) throw GraphError("maturity is not defined for an arc");
  if (is_circle(g)) return {false, {"circle"}};
  return maturity_from(g, q_invariants(g));
}

BettiReport betti_f2(const Graph& g) {
  require_simple_domain(g);
  BettiReport r;
  r.b1_graph = betti1(g);
  r.sigma = sigma(g);
  if (is_arc(g)) {
    r.special_case = SpecialCase::arc;
    r.b0_config = 2;
    r.reasons.push_back("arc");
    return r;
  }
  if (is_circle(g)) {
    r.special_case = SpecialCase::circle;
    r.b1_config = 1;
    r.mature = false;
    r.reasons.push_back("circle");
    return r;
  }
  const QInvariants q = q_invariants(g);
  r.q_rank = q.rank;
  r.q_torsion = q.torsion;
  r.b1_config = 2 * r.b1_graph + r.q_rank;
  const std::int64_t b1 = static_cast<std::int64_t>(r.b1_graph);
  const std::int64_t b2 = b1 * b1 - b1 + 1 + static_cast<std::int64_t>(r.q_rank) - r.sigma;
  if (b2 < 0) throw LinalgError("negative second Betti number");
  r.b2_config = static_cast<std::size_t>(b2);
  const Maturity m = maturity_from(g, q);
  r.mature = m.mature;
  r.reasons = m.reasons;
  return r;
}

namespace {

nlohmann::json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

nlohmann::json integers_json(const IntVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

}  // namespace

nlohmann::json to_json(const AbelianPresentation& a) {
  const nlohmann::json t = integers_json(a.torsion);
  return {{"rank", a.rank}, {"torsion", t}, {"text", a.to_string()}};
}

nlohmann::json to_json(const CokernelElement& e) {
  return {{"free", integers_json(e.free)}, {"torsion", integers_json(e.torsion)}};
}

nlohmann::json to_json(const BettiReport& r) {
  nlohmann::json j;
  j["b0_config"] = r.b0_config;
  j["b1_graph"] = r.b1_graph;
  j["b1_config"] = r.b1_config;
  j["b2_config"] = r.b2_config;
  j["q_rank"] = r.q_rank;
  j["q_torsion"] = integers_json(r.q_torsion);
  j["sigma"] = r.sigma;
  j["special_case"] = to_string(r.special_case);
  j["mature"] = r.mature ? nlohmann::json(*r.mature) : nlohmann::json(nullptr);
  j["reasons"] = r.reasons;
  return j;
}

}  // namespace gconf
