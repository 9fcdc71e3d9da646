#pragma once

// Linking homomorphism H1(G0) -> Q for a vertex pair u, v, where G0 is the
// graph with u and v removed, and the reports built on it: edge addition
// between u and v, pendant edges and bridges.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gconf/graph.hpp"
#include "gconf/intersection.hpp"

namespace gconf {

/// Induced subgraph on V minus {u, v}.
InducedSubgraph gamma0(const Graph& g, std::size_t u, std::size_t v);

class LinkingContext {
 public:
  /// Adjacent u, v are separated by subdividing the edge uv once.  A shared
  /// Q for the same graph may be passed in to avoid recomputation.
  LinkingContext(const Graph& g, std::size_t u, std::size_t v,
                 std::shared_ptr<const QPresentation> q = nullptr);

  const Graph& graph() const { return graph_; }
  std::size_t u() const { return u_; }
  std::size_t v() const { return v_; }
  bool subdivided() const { return subdivided_; }
  const InducedSubgraph& g0() const { return g0_; }
  /// Cycle basis of G0 written in edges of graph().
  const std::vector<Chain1>& cycles() const { return cycles_; }
  const QPresentation& q() const { return *q_; }
  std::shared_ptr<const QPresentation> q_ptr() const { return q_; }

  /// Deterministic path from v to u (boundary u - v).
  const Chain1& path() const { return path_; }
  /// A different chain with the same boundary: edge-disjoint when possible.
  const Chain1& second_path() const { return second_path_; }

  /// Relative 2-cycle a x z.
  IntVector lift(const Chain1& z, const Chain1& a) const;
  CokernelElement linking_class(const Chain1& z) const { return linking_class(z, path_); }
  CokernelElement linking_class(const Chain1& z, const Chain1& a) const;
  /// tau applied to the lift of z, reduced into Q.
  CokernelElement tau_linking_class(const Chain1& z) const;

 private:
  Graph graph_;
  std::size_t u_ = 0;
  std::size_t v_ = 0;
  bool subdivided_ = false;
  InducedSubgraph g0_;
  std::vector<Chain1> cycles_;
  std::shared_ptr<const QPresentation> q_;
  Chain1 path_;
  Chain1 second_path_;
};

/// Linking class of z (edges of g, supported away from u and v).
CokernelElement linking_class(const Graph& g, std::size_t u, std::size_t v, const Chain1& z);

struct LinkingReport {
  std::size_t u = 0;
  std::size_t v = 0;
  bool subdivided = false;
  std::vector<std::string> notes;
  std::size_t gamma0_b0 = 0;
  std::vector<Chain1> gamma0_cycles;
  AbelianPresentation q;
  std::vector<CokernelElement> lk_values;
  std::vector<CokernelElement> tau_lk_values;
  std::size_t A_rank = 0;
  std::size_t A_plus_tauA_rank = 0;
  /// Some linking value has a nonzero torsion coordinate.
  bool torsion_in_image = false;
};

LinkingReport linking_report(const LinkingContext& ctx);
LinkingReport linking_report(const Graph& g, std::size_t u, std::size_t v);

struct EdgeAdditionReport {
  BettiReport before;
  BettiReport after;
  LinkingReport linking;
  std::int64_t G_rank = 0;
  std::int64_t X_rank = 0;
  bool q_identity = false;   // q(after) = q(before) - rk(A + tau A) + rk G
  bool b2_identity = false;  // b2(after) = b2(before) + rk X
  bool consistency = false;
  std::vector<std::string> flags;
};

EdgeAdditionReport add_edge_report(const LinkingContext& ctx);
EdgeAdditionReport add_edge_report(const Graph& g, std::size_t u, std::size_t v);

struct EnlargementReport {
  BettiReport before;  // for a bridge: the first part
  std::optional<BettiReport> before_second;
  BettiReport after;
  std::int64_t expected_b1_delta = 0;
  std::int64_t expected_b2 = 0;
  bool holds = false;
};

/// Adds a new vertex joined to v.
EnlargementReport pendant_report(const Graph& g, std::size_t v);
/// Joins u in g1 to v in g2 by a new edge.
EnlargementReport bridge_report(const Graph& g1, const Graph& g2, std::size_t u, std::size_t v);

nlohmann::json to_json(const Graph& g, const Chain1& z);
nlohmann::json to_json(const LinkingReport& r, const Graph& g);
nlohmann::json to_json(const EdgeAdditionReport& r, const Graph& g);

}  // namespace gconf
