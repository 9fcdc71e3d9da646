#include "gconf/linalg.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace gconf {

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw LinalgError("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw LinalgError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::apply(const IntVector& x) const {
  if (x.size() != cols_) throw LinalgError("dimension mismatch in matrix-vector product");
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Integer acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Integer& a = (*this)(r, c);
      if (sgn(a) != 0 && sgn(x[c]) != 0) acc += a * x[c];
    }
    out[r] = std::move(acc);
  }
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  Integer* d = &data_[dst * cols_];
  const Integer* s = &data_[src * cols_];
  for (std::size_t c = 0; c < cols_; ++c)
    if (sgn(s[c]) != 0) mpz_addmul(d[c].get_mpz_t(), factor.get_mpz_t(), s[c].get_mpz_t());
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    const Integer& s = (*this)(r, src);
    if (sgn(s) != 0) mpz_addmul((*this)(r, dst).get_mpz_t(), factor.get_mpz_t(), s.get_mpz_t());
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw LinalgError("dimension mismatch in matrix product");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) mpz_addmul(out(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

// ------------------------------------------------------------- SparseMatrix

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

void SparseMatrix::add(std::size_t r, std::size_t c, std::int64_t value) {
  if (r >= rows_ || c >= columns_.size()) throw LinalgError("sparse index out of range");
  if (value == 0) return;
  auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) {
    it->second += value;
    if (it->second == 0) col.erase(it);
  } else {
    col.insert(it, {r, value});
  }
}

std::size_t SparseMatrix::push_column(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  std::vector<Entry> merged;
  for (const auto& e : entries) {
    if (e.first >= rows_) throw LinalgError("sparse index out of range");
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(e);
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
  columns_.push_back(std::move(merged));
  return columns_.size() - 1;
}

IntMatrix SparseMatrix::to_dense() const {
  IntMatrix m(rows_, columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c)
    for (const auto& [r, v] : columns_[c]) m(r, c) = static_cast<long>(v);
  return m;
}

IntVector SparseMatrix::apply(const IntVector& x) const {
  if (x.size() != columns_.size()) throw LinalgError("dimension mismatch in matrix-vector product");
  IntVector out(rows_);
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (sgn(x[c]) == 0) continue;
    for (const auto& [r, v] : columns_[c]) out[r] += x[c] * static_cast<long>(v);
  }
  return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols() != rhs.rows()) throw LinalgError("dimension mismatch in sparse product");
  SparseMatrix out(rows_, 0);
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    std::vector<Entry> acc;
    for (const auto& [k, b] : rhs.column(j))
      for (const auto& [i, a] : columns_[k]) acc.emplace_back(i, a * b);
    out.push_column(std::move(acc));
  }
  return out;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
}

// ------------------------------------------------------------ Smith form

namespace {

int cmpabs(const Integer& x, const Integer& y) { return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()); }

// Applies the same elementary operations to A and, when present, to the
// accumulated transforms so that U * M * V = A holds throughout.
struct SmithReducer {
  IntMatrix& a;
  IntMatrix* u;
  IntMatrix* v;

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (u) u->swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (v) v->swap_cols(i, j);
  }
  void row_op(std::size_t dst, std::size_t src, const Integer& f) {
    a.add_row_multiple(dst, src, f);
    if (u) u->add_row_multiple(dst, src, f);
  }
  void col_op(std::size_t dst, std::size_t src, const Integer& f) {
    a.add_col_multiple(dst, src, f);
    if (v) v->add_col_multiple(dst, src, f);
  }
  void negate_row(std::size_t r) {
    a.negate_row(r);
    if (u) u->negate_row(r);
  }

  // Smallest nonzero absolute value in the trailing block, ties broken by
  // lowest (row, col).
  bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        const Integer& x = a(i, j);
        if (sgn(x) == 0) continue;
        if (!found || cmpabs(x, best) < 0) {
          found = true;
          best = abs(x);
          pr = i;
          pc = j;
          if (best == 1) return true;
        }
      }
    return found;
  }

  std::size_t run() {
    const std::size_t limit = std::min(a.rows(), a.cols());
    std::size_t t = 0;
    for (; t < limit; ++t) {
      std::size_t pr = 0, pc = 0;
      if (!find_pivot(t, pr, pc)) break;
      swap_rows(t, pr);
      swap_cols(t, pc);
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < a.rows(); ++i) {
          if (sgn(a(i, t)) == 0) continue;
          Integer q = a(i, t) / a(t, t);
          row_op(i, t, -q);
          if (sgn(a(i, t)) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < a.cols(); ++j) {
          if (sgn(a(t, j)) == 0) continue;
          Integer q = a(t, j) / a(t, t);
          col_op(j, t, -q);
          if (sgn(a(t, j)) != 0) clean = false;
        }
        if (!clean) {
          // Remainders are strictly smaller than the pivot; bring the
          // smallest one into position.
          std::size_t bi = t, bj = t;
          for (std::size_t i = t + 1; i < a.rows(); ++i)
            if (sgn(a(i, t)) != 0 && cmpabs(a(i, t), a(bi, bj)) < 0) bi = i, bj = t;
          for (std::size_t j = t + 1; j < a.cols(); ++j)
            if (sgn(a(t, j)) != 0 && cmpabs(a(t, j), a(bi, bj)) < 0) bi = t, bj = j;
          swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        bool divisible = true;
        for (std::size_t i = t + 1; i < a.rows() && divisible; ++i)
          for (std::size_t j = t + 1; j < a.cols(); ++j)
            if (sgn(a(i, j)) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
              row_op(t, i, 1);
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      if (sgn(a(t, t)) < 0) negate_row(t);
    }
    return t;
  }
};

}  // namespace

IntVector SnfDecomposition::invariant_factors() const {
  IntVector out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(d(i, i));
  return out;
}

SnfDecomposition snf(const IntMatrix& m) {
  SnfDecomposition out;
  out.d = m;
  out.u = IntMatrix::identity(m.rows());
  out.v = IntMatrix::identity(m.cols());
  SmithReducer reducer{out.d, &out.u, &out.v};
  out.rank = reducer.run();
  return out;
}

IntVector InvariantFactors::torsion() const {
  IntVector out;
  for (const auto& f : factors)
    if (f > 1) out.push_back(f);
  return out;
}

InvariantFactors invariant_factors(const IntMatrix& m) {
  IntMatrix work = m;
  SmithReducer reducer{work, nullptr, nullptr};
  InvariantFactors out;
  out.rank = reducer.run();
  for (std::size_t i = 0; i < out.rank; ++i) out.factors.push_back(work(i, i));
  return out;
}

namespace {

bool checked_fma(std::int64_t acc, std::int64_t f, std::int64_t x, std::int64_t& out) {
  std::int64_t prod = 0;
  if (__builtin_mul_overflow(f, x, &prod)) return false;
  return !__builtin_add_overflow(acc, prod, &out);
}

// Unit-pivot elimination on a sparse matrix.  Each unit pivot contributes an
// invariant factor 1 and is removed together with its row and column; the
// Schur complement keeps the remaining invariant factors.
class SparseEliminator {
 public:
  using RowEntry = std::pair<std::uint32_t, std::int64_t>;

  explicit SparseEliminator(const SparseMatrix& m)
      : rows_(m.rows()), row_active_(m.rows(), true), col_rows_(m.cols()),
        col_count_(m.cols(), 0), col_active_(m.cols(), true) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (const auto& [r, v] : m.column(c)) {
        rows_[r].emplace_back(static_cast<std::uint32_t>(c), v);
        col_rows_[c].push_back(static_cast<std::uint32_t>(r));
        ++col_count_[c];
      }
    for (auto& row : rows_) std::sort(row.begin(), row.end());
  }

  std::size_t eliminate() {
    std::size_t units = 0;
    while (true) {
      std::size_t pr = 0, pc = 0;
      if (!choose_pivot(pr, pc)) break;
      if (!pivot(pr, pc)) break;
      ++units;
    }
    return units;
  }

  IntMatrix remainder() const {
    std::vector<std::size_t> rmap, cmap(col_active_.size(), SIZE_MAX);
    std::size_t nc = 0;
    for (std::size_t c = 0; c < col_active_.size(); ++c)
      if (col_active_[c] && col_count_[c] > 0) cmap[c] = nc++;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (row_active_[r] && !rows_[r].empty()) rmap.push_back(r);
    IntMatrix out(rmap.size(), nc);
    for (std::size_t i = 0; i < rmap.size(); ++i)
      for (const auto& [c, v] : rows_[rmap[i]])
        if (cmap[c] != SIZE_MAX) out(i, cmap[c]) = static_cast<long>(v);
    return out;
  }

 private:
  const RowEntry* find(std::size_t r, std::size_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(c),
                               [](const RowEntry& e, std::uint32_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &*it : nullptr;
  }

  // Drops stale row references from a column list.
  void compact_column(std::size_t c) {
    auto& list = col_rows_[c];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::erase_if(list, [&](std::uint32_t r) { return !row_active_[r] || find(r, c) == nullptr; });
  }

  // Approximate Markowitz: the sparsest column holding a unit entry, then
  // the shortest row among its unit entries.
  bool choose_pivot(std::size_t& pr, std::size_t& pc) {
    std::size_t best_cost = SIZE_MAX;
    std::size_t found_count = 0;
    bool found = false;
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < col_active_.size(); ++c)
      if (col_active_[c] && col_count_[c] > 0) order.push_back(c);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return col_count_[x] < col_count_[y]; });
    for (std::size_t c : order) {
      const std::size_t ccost = col_count_[c] - 1;
      if (found && col_count_[c] > found_count) break;
      compact_column(c);
      for (std::uint32_t r : col_rows_[c]) {
        const RowEntry* e = find(r, c);
        if (e->second != 1 && e->second != -1) continue;
        const std::size_t cost = ccost * (rows_[r].size() - 1);
        if (!found || cost < best_cost) {
          found = true;
          found_count = col_count_[c];
          best_cost = cost;
          pr = r;
          pc = c;
        }
      }
      if (found && best_cost == 0) break;
    }
    return found;
  }

  bool pivot(std::size_t pr, std::size_t pc) {
    const std::int64_t p = find(pr, pc)->second;  // +1 or -1
    const auto& prow = rows_[pr];
    compact_column(pc);
    std::vector<std::pair<std::uint32_t, std::vector<RowEntry>>> updates;
    for (std::uint32_t r : col_rows_[pc]) {
      if (r == pr) continue;
      const std::int64_t a = find(r, pc)->second;
      const std::int64_t f = -a * p;
      std::vector<RowEntry> merged;
      merged.reserve(rows_[r].size() + prow.size());
      auto it = rows_[r].begin();
      auto jt = prow.begin();
      while (it != rows_[r].end() || jt != prow.end()) {
        std::int64_t value = 0;
        std::uint32_t col = 0;
        if (jt == prow.end() || (it != rows_[r].end() && it->first < jt->first)) {
          col = it->first;
          value = it->second;
          ++it;
        } else if (it == rows_[r].end() || jt->first < it->first) {
          col = jt->first;
          if (!checked_fma(0, f, jt->second, value)) return false;
          ++jt;
        } else {
          col = it->first;
          if (!checked_fma(it->second, f, jt->second, value)) return false;
          ++it;
          ++jt;
        }
        if (value != 0) merged.emplace_back(col, value);
      }
      updates.emplace_back(r, std::move(merged));
    }
    for (auto& [r, merged] : updates) {
      for (const auto& [c, v] : rows_[r]) --col_count_[c];
      for (const auto& [c, v] : merged) {
        ++col_count_[c];
        col_rows_[c].push_back(r);
      }
      rows_[r] = std::move(merged);
    }
    for (const auto& [c, v] : rows_[pr]) --col_count_[c];
    row_active_[pr] = false;
    col_active_[pc] = false;
    return true;
  }

  std::vector<std::vector<RowEntry>> rows_;
  std::vector<bool> row_active_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::size_t> col_count_;
  std::vector<bool> col_active_;
};

}  // namespace

InvariantFactors invariant_factors(const SparseMatrix& m) {
  SparseEliminator elim(m);
  const std::size_t units = elim.eliminate();
  InvariantFactors rest = invariant_factors(elim.remainder());
  InvariantFactors out;
  out.rank = units + rest.rank;
  out.factors.assign(units, Integer(1));
  out.factors.insert(out.factors.end(), rest.factors.begin(), rest.factors.end());
  return out;
}

std::size_t rank(const IntMatrix& m) { return invariant_factors(m).rank; }

IntMatrix kernel_basis(const IntMatrix& m) {
  SnfDecomposition s = snf(m);
  IntMatrix out(m.cols(), m.cols() - s.rank);
  for (std::size_t j = s.rank; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) out(i, j - s.rank) = s.v(i, j);
  return out;
}

// ----------------------------------------------------------- lattices

LatticeSolver::LatticeSolver(IntMatrix basis) : basis_(std::move(basis)), snf_(snf(basis_)) {
  if (snf_.rank != basis_.cols()) throw LinalgError("lattice basis columns are dependent");
}

std::optional<IntVector> LatticeSolver::solve(const IntVector& x) const {
  if (x.size() != basis_.rows()) throw LinalgError("dimension mismatch in lattice solve");
  const IntVector y = snf_.u.apply(x);
  IntVector w(basis_.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < snf_.rank) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), snf_.d(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(w[i].get_mpz_t(), y[i].get_mpz_t(), snf_.d(i, i).get_mpz_t());
    } else if (sgn(y[i]) != 0) {
      return std::nullopt;
    }
  }
  IntVector c = snf_.v.apply(w);
  if (basis_.apply(c) != x) throw LinalgError("lattice solve failed verification");
  return c;
}

IntVector coords_in_lattice(const IntMatrix& basis, const IntVector& x) {
  auto c = LatticeSolver(basis).solve(x);
  if (!c) throw NotInLattice("vector is not in the column lattice");
  return *c;
}

// ----------------------------------------------------------- cokernels

std::string AbelianPresentation::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << "^" << rank;
    first = false;
  }
  for (const auto& t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t.get_str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

bool CokernelElement::is_zero() const {
  auto zero = [](const Integer& x) { return sgn(x) == 0; };
  return std::all_of(free.begin(), free.end(), zero) && std::all_of(torsion.begin(), torsion.end(), zero);
}

Cokernel::Cokernel(const IntMatrix& m) : snf_(snf(m)) {
  group_.rank = m.rows() - snf_.rank;
  for (std::size_t i = 0; i < snf_.rank; ++i)
    if (snf_.d(i, i) > 1) {
      torsion_rows_.push_back(i);
      group_.torsion.push_back(snf_.d(i, i));
    }
}

CokernelElement Cokernel::normalize(CokernelElement e) const {
  for (std::size_t k = 0; k < e.torsion.size(); ++k)
    mpz_fdiv_r(e.torsion[k].get_mpz_t(), e.torsion[k].get_mpz_t(), group_.torsion[k].get_mpz_t());
  return e;
}

CokernelElement Cokernel::reduce(const IntVector& x) const {
  if (x.size() != ambient_dimension()) throw LinalgError("dimension mismatch in cokernel reduction");
  const IntVector y = snf_.u.apply(x);
  CokernelElement e;
  e.free.assign(y.begin() + static_cast<std::ptrdiff_t>(snf_.rank), y.end());
  for (std::size_t i : torsion_rows_) e.torsion.push_back(y[i]);
  return normalize(std::move(e));
}

CokernelElement Cokernel::add(const CokernelElement& a, const CokernelElement& b) const {
  CokernelElement e = a;
  for (std::size_t i = 0; i < e.free.size(); ++i) e.free[i] += b.free[i];
  for (std::size_t i = 0; i < e.torsion.size(); ++i) e.torsion[i] += b.torsion[i];
  return normalize(std::move(e));
}

CokernelElement Cokernel::negate(const CokernelElement& a) const {
  CokernelElement e = a;
  for (auto& x : e.free) x = -x;
  for (auto& x : e.torsion) x = -x;
  return normalize(std::move(e));
}

Cokernel cokernel(const IntMatrix& m) { return Cokernel(m); }

std::size_t rank_of_vectors(const std::vector<IntVector>& vectors, std::size_t length) {
  if (vectors.empty() || length == 0) return 0;
  return rank(IntMatrix::from_columns(length, vectors));
}

}  // namespace gconf
