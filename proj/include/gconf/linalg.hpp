#pragma once

// Exact integer linear algebra: Smith normal form, integer kernels, lattice
// membership and cokernel presentations.  Dense matrices carry GMP integers;
// boundary-style matrices with small entries use SparseMatrix.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace gconf {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a vector is asked for coordinates in a lattice it is not in.
class NotInLattice : public LinalgError {
 public:
  using LinalgError::LinalgError;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;
  IntVector apply(const IntVector& x) const;
  IntMatrix transposed() const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Column-oriented sparse matrix with machine-word entries.  Used for
/// boundary and intersection matrices whose entries stay small.
class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, std::int64_t>;  // (row, value)

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  std::size_t nonzeros() const;

  /// Accumulates value into entry (r, c); zero sums are removed.
  void add(std::size_t r, std::size_t c, std::int64_t value);
  /// Appends a whole column built from a sparse vector.
  std::size_t push_column(std::vector<Entry> entries);

  /// Entries sorted by row.
  const std::vector<Entry>& column(std::size_t c) const { return columns_[c]; }

  IntMatrix to_dense() const;
  IntVector apply(const IntVector& x) const;
  SparseMatrix operator*(const SparseMatrix& rhs) const;
  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

/// U * M * V = D with U, V unimodular and D diagonal with d1 | d2 | ... | dr.
struct SnfDecomposition {
  IntMatrix u;
  IntMatrix v;
  IntMatrix d;
  std::size_t rank = 0;

  /// The nonzero diagonal entries d1..dr.
  IntVector invariant_factors() const;
};

SnfDecomposition snf(const IntMatrix& m);

/// Rank and nonzero invariant factors without transforms.
struct InvariantFactors {
  std::size_t rank = 0;
  IntVector factors;  // all nonzero diagonal entries, ascending divisibility chain

  /// Factors exceeding one.
  IntVector torsion() const;
};

InvariantFactors invariant_factors(const IntMatrix& m);
/// Sparse unit-pivot elimination followed by a dense Smith reduction of the
/// remaining block.  Exact for every input.
InvariantFactors invariant_factors(const SparseMatrix& m);

std::size_t rank(const IntMatrix& m);

/// Columns form a basis of the integer kernel lattice {x : M x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

/// Solves B c = x over the integers for a fixed basis B with independent
/// columns.  The Smith decomposition of B is computed once.
class LatticeSolver {
 public:
  explicit LatticeSolver(IntMatrix basis);

  std::optional<IntVector> solve(const IntVector& x) const;
  const IntMatrix& basis() const { return basis_; }

 private:
  IntMatrix basis_;
  SnfDecomposition snf_;
};

/// Throws NotInLattice when x is outside the column lattice of B.
IntVector coords_in_lattice(const IntMatrix& basis, const IntVector& x);

/// Z^rank + sum Z/t_i with t_1 | t_2 | ... and every t_i > 1.
struct AbelianPresentation {
  std::size_t rank = 0;
  IntVector torsion;

  bool trivial() const { return rank == 0 && torsion.empty(); }
  std::string to_string() const;
};

/// An element of an AbelianPresentation: free coordinates and torsion
/// coordinates reduced into [0, t_i).
struct CokernelElement {
  IntVector free;
  IntVector torsion;

  bool is_zero() const;
  friend bool operator==(const CokernelElement&, const CokernelElement&) = default;
};

/// Cokernel of M : Z^cols -> Z^rows together with its reduction map.
class Cokernel {
 public:
  explicit Cokernel(const IntMatrix& m);

  const AbelianPresentation& group() const { return group_; }
  std::size_t ambient_dimension() const { return snf_.u.rows(); }
  std::size_t relation_rank() const { return snf_.rank; }

  CokernelElement reduce(const IntVector& x) const;
  CokernelElement add(const CokernelElement& a, const CokernelElement& b) const;
  CokernelElement negate(const CokernelElement& a) const;

 private:
  CokernelElement normalize(CokernelElement e) const;

  SnfDecomposition snf_;
  AbelianPresentation group_;
  std::vector<std::size_t> torsion_rows_;  // diagonal positions with d > 1
};

Cokernel cokernel(const IntMatrix& m);

/// Rank over the rationals of a set of integer vectors of equal length.
std::size_t rank_of_vectors(const std::vector<IntVector>& vectors, std::size_t length);

}  // namespace gconf
