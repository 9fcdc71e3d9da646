#include "gconf/neighborhood.hpp"

#include <algorithm>

namespace gconf {

RelativeComplex::RelativeComplex(const Graph& g, bool cells_only) : graph_(g) {
  if (!is_connected(g)) throw GraphError("relative complex requires a connected graph");
  const std::size_t m = g.edge_count();

  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f)
      if (g.closures_meet(e, f)) {
        index2_[{e, f}] = basis2_.size();
        basis2_.emplace_back(e, f);
      }
  tau_.resize(basis2_.size());
  for (std::size_t i = 0; i < basis2_.size(); ++i) tau_[i] = index2_.at({basis2_[i].second, basis2_[i].first});

  for (bool vertex_first : {true, false}) {
    std::vector<ProductCell1> cells;
    for (std::size_t e = 0; e < m; ++e)
      for (std::size_t v : {g.edge(e).a, g.edge(e).b}) cells.push_back({vertex_first, v, e});
    std::sort(cells.begin(), cells.end());
    for (const auto& c : cells) {
      index1_[c] = basis1_.size();
      basis1_.push_back(c);
    }
  }

  boundary2_ = SparseMatrix(basis1_.size(), 0);
  for (const auto& [e, f] : basis2_) {
    std::map<std::size_t, std::int64_t> col;
    const Edge& x = g.edge(e);
    const Edge& y = g.edge(f);
    // (de) x f
    if (y.touches(x.b)) col[index1_.at({true, x.b, f})] += 1;
    if (y.touches(x.a)) col[index1_.at({true, x.a, f})] -= 1;
    // -e x (df)
    if (x.touches(y.b)) col[index1_.at({false, y.b, e})] -= 1;
    if (x.touches(y.a)) col[index1_.at({false, y.a, e})] += 1;
    std::vector<SparseMatrix::Entry> entries;
    for (const auto& [r, c] : col)
      if (c != 0) entries.emplace_back(r, c);
    boundary2_.push_column(std::move(entries));
  }

  if (!cells_only) {
    h2_ = kernel_basis(boundary2_.to_dense());
    h2_rank_ = h2_->cols();
  } else {
    h2_rank_ = basis2_.size() - invariant_factors(boundary2_).rank;
  }
}

const IntMatrix& RelativeComplex::h2_basis() const {
  if (!h2_) throw LinalgError("relative complex was built without its kernel lattice");
  return *h2_;
}

std::size_t RelativeComplex::h2_rank() const { return h2_rank_; }

std::optional<std::size_t> RelativeComplex::index2(std::size_t e, std::size_t f) const {
  auto it = index2_.find({e, f});
  if (it == index2_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> RelativeComplex::index1(const ProductCell1& c) const {
  auto it = index1_.find(c);
  if (it == index1_.end()) return std::nullopt;
  return it->second;
}

IntVector RelativeComplex::tau_apply(const IntVector& chain) const {
  if (chain.size() != basis2_.size()) throw LinalgError("chain length does not match the 2-cell basis");
  IntVector out(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) out[tau_[i]] = -chain[i];
  return out;
}

IntVector RelativeComplex::boundary(const IntVector& chain) const {
  if (chain.size() != basis2_.size()) throw LinalgError("chain length does not match the 2-cell basis");
  return boundary2_.apply(chain);
}

bool RelativeComplex::is_cycle(const IntVector& chain) const {
  for (const auto& x : boundary(chain))
    if (x != 0) return false;
  return true;
}

RelativeComplex build_relative_complex(const Graph& g) { return RelativeComplex(g); }

IntVector tau_apply(const RelativeComplex& rc, const IntVector& chain) { return rc.tau_apply(chain); }

std::map<EdgePair, std::int64_t> product_chain(const Chain1& x, const Chain1& y) {
  std::map<EdgePair, std::int64_t> out;
  for (const auto& [e, n] : x.coefficients)
    for (const auto& [f, k] : y.coefficients)
      if (n * k != 0) out[{e, f}] += n * k;
  return out;
}

std::map<ProductCell1, std::int64_t> product_boundary(const Graph& g,
                                                      const std::map<EdgePair, std::int64_t>& chain) {
  std::map<ProductCell1, std::int64_t> out;
  for (const auto& [ef, c] : chain) {
    const auto [e, f] = ef;
    out[{true, g.edge(e).b, f}] += c;
    out[{true, g.edge(e).a, f}] -= c;
    out[{false, g.edge(f).b, e}] -= c;
    out[{false, g.edge(f).a, e}] += c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

IntVector project_to_relative(const RelativeComplex& rc, const std::map<EdgePair, std::int64_t>& chain) {
  IntVector out(rc.basis2().size());
  for (const auto& [ef, c] : chain)
    if (auto i = rc.index2(ef.first, ef.second)) out[*i] += c;
  return out;
}

}  // namespace gconf
