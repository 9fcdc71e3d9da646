#pragma once

// Relative cellular chains of the diagonal neighbourhood N of a graph: the
// union of squares e x f over edges whose closures meet, taken relative to
// its frontier.  Boundary convention: d(e x f) = (de) x f - e x (df), with
// de = head - tail.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gconf/graph.hpp"
#include "gconf/linalg.hpp"

namespace gconf {

/// 1-cell of Gamma x Gamma with one vertex factor.
struct ProductCell1 {
  bool vertex_first = true;  // v x e when true, e x v otherwise
  std::size_t vertex = 0;
  std::size_t edge = 0;

  friend auto operator<=>(const ProductCell1&, const ProductCell1&) = default;
};

using EdgePair = std::pair<std::size_t, std::size_t>;

class RelativeComplex {
 public:
  /// Connected input required.  With cells_only the kernel lattice is skipped.
  explicit RelativeComplex(const Graph& g, bool cells_only = false);

  const Graph& graph() const { return graph_; }
  const std::vector<EdgePair>& basis2() const { return basis2_; }
  const std::vector<ProductCell1>& basis1() const { return basis1_; }
  const SparseMatrix& boundary2() const { return boundary2_; }
  /// Columns span ker of the boundary; throws when built with cells_only.
  const IntMatrix& h2_basis() const;
  std::size_t h2_rank() const;

  std::optional<std::size_t> index2(std::size_t e, std::size_t f) const;
  std::optional<std::size_t> index1(const ProductCell1& c) const;

  /// Index of (f, e) for basis element (e, f); the sign of tau is always -1.
  std::size_t tau_target(std::size_t i) const { return tau_[i]; }

  IntVector tau_apply(const IntVector& chain) const;
  IntVector boundary(const IntVector& chain) const;
  bool is_cycle(const IntVector& chain) const;

 private:
  Graph graph_;
  std::vector<EdgePair> basis2_;
  std::vector<ProductCell1> basis1_;
  std::map<EdgePair, std::size_t> index2_;
  std::map<ProductCell1, std::size_t> index1_;
  std::vector<std::size_t> tau_;
  SparseMatrix boundary2_;
  std::optional<IntMatrix> h2_;
  std::size_t h2_rank_ = 0;
};

RelativeComplex build_relative_complex(const Graph& g);

IntVector tau_apply(const RelativeComplex& rc, const IntVector& chain);

/// Product chain x * y in C_2(Gamma x Gamma), keyed by edge pairs.
std::map<EdgePair, std::int64_t> product_chain(const Chain1& x, const Chain1& y);

/// Boundary of a product 2-chain in C_1(Gamma x Gamma) using the frozen sign rule.
std::map<ProductCell1, std::int64_t> product_boundary(const Graph& g,
                                                      const std::map<EdgePair, std::int64_t>& chain);

/// Keeps the cells lying in N and returns relative coordinates.
IntVector project_to_relative(const RelativeComplex& rc, const std::map<EdgePair, std::int64_t>& chain);

}  // namespace gconf
