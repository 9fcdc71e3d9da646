#pragma once

// Intersection form H1 x H1 -> H2(N, dN), its cokernel Q, maturity and the
// Betti numbers of the two-point configuration space.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gconf/graph.hpp"
#include "gconf/linalg.hpp"
#include "gconf/neighborhood.hpp"

namespace gconf {

/// Coefficient of (e, f) is z[e] * z'[f] when the closures meet.
IntVector intersection_chain(const RelativeComplex& rc, const Chain1& z, const Chain1& zp);
IntVector intersection_chain(const Graph& g, const Chain1& z, const Chain1& zp);

struct IntersectionForm {
  std::vector<Chain1> cycles;  // cycle basis of the graph
  std::vector<std::pair<std::size_t, std::size_t>> domain_basis;  // (i, j), row-major
  IntMatrix matrix;  // basis2 x b1^2
};

IntersectionForm build_form(const RelativeComplex& rc);
/// Same columns as build_form, stored sparse.
SparseMatrix build_form_sparse(const RelativeComplex& rc, const std::vector<Chain1>& cycles);

/// Q as an abstract group plus the reduction of relative 2-cycles into it.
class QPresentation {
 public:
  explicit QPresentation(const Graph& g);

  const AbelianPresentation& group() const { return coker_->group(); }
  const RelativeComplex& complex() const { return *rc_; }
  const IntersectionForm& form() const { return form_; }
  /// Rank of the form as a map into the kernel lattice.
  std::size_t form_rank() const { return coker_->relation_rank(); }

  /// x must be a relative 2-cycle written over basis2.
  CokernelElement reduce(const IntVector& x) const;
  CokernelElement add(const CokernelElement& a, const CokernelElement& b) const { return coker_->add(a, b); }
  CokernelElement negate(const CokernelElement& a) const { return coker_->negate(a); }

 private:
  std::shared_ptr<const RelativeComplex> rc_;
  IntersectionForm form_;
  std::shared_ptr<const LatticeSolver> h2_;
  std::shared_ptr<const Cokernel> coker_;
};

QPresentation q_group(const Graph& g);

/// Rank and torsion of Q without coordinates.  The kernel lattice is a direct
/// summand of the 2-chains, so the torsion of Q equals the torsion of the
/// cokernel of the form taken in chain coordinates.
struct QInvariants {
  std::size_t rank = 0;
  IntVector torsion;
  std::size_t h2_rank = 0;
  std::size_t form_rank = 0;
};
QInvariants q_invariants(const Graph& g);

enum class SpecialCase { none, arc, circle };
std::string to_string(SpecialCase s);

struct Maturity {
  bool mature = false;
  std::vector<std::string> reasons;
};

/// Throws on arcs, disconnected or edgeless input.
Maturity is_mature(const Graph& g);

struct BettiReport {
  std::size_t b0_config = 1;
  std::size_t b1_graph = 0;
  std::size_t b1_config = 0;
  std::size_t b2_config = 0;
  std::size_t q_rank = 0;
  IntVector q_torsion;
  std::int64_t sigma = 0;
  SpecialCase special_case = SpecialCase::none;
  std::optional<bool> mature;  // undefined for arcs
  std::vector<std::string> reasons;
};

BettiReport betti_f2(const Graph& g);

nlohmann::json to_json(const BettiReport& r);
nlohmann::json to_json(const AbelianPresentation& a);
nlohmann::json to_json(const CokernelElement& e);

}  // namespace gconf
