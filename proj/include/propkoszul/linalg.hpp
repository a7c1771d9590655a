#pragma once

// Exact sparse linear algebra over the rationals and chain-complex homology.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace propkoszul {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

/// Sparse vector: entries sorted by index, no stored zeros.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

/// x + a*y
SparseVec axpy(const SparseVec& x, const Rational& a, const SparseVec& y);
SparseVec scaled(const SparseVec& x, const Rational& a);
/// Builds a sparse vector from unsorted (index, value) pairs, summing duplicates.
SparseVec make_sparse(std::vector<std::pair<std::size_t, Rational>> entries);

/// Column-major sparse rational matrix.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
  static RationalMatrix from_columns(std::size_t rows, std::vector<SparseVec> cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  const SparseVec& column(std::size_t c) const { return cols_[c]; }
  std::size_t nonzeros() const;
  bool is_zero() const;

  RationalMatrix transpose() const;
  SparseVec apply(const SparseVec& v) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> cols_;
};

/// Row echelon form built incrementally. Each stored row has its pivot at its
/// smallest index, normalized to 1.
class Echelon {
 public:
  explicit Echelon(std::size_t dim = 0) : pivot_row_(dim, npos) {}

  /// Inserts v; returns true when v was independent of the rows so far.
  bool insert(SparseVec v);
  /// Residue of v after elimination against all pivots.
  SparseVec reduce(SparseVec v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return pivot_row_.size(); }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] != npos; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<SparseVec> rows_;
  std::vector<std::size_t> pivot_row_;
};

/// Echelon form that remembers, for each row, the combination of inserted
/// vectors producing it. Used for kernels and for coordinates in a basis.
class TrackingEchelon {
 public:
  explicit TrackingEchelon(std::size_t dim) : pivot_row_(dim, npos) {}

  /// Inserts the next vector (its label is the insertion count). Returns the
  /// relation among inserted vectors when v is dependent.
  std::optional<SparseVec> insert(SparseVec v);
  /// Coordinates of v in the inserted vectors, if v lies in their span.
  std::optional<SparseVec> coordinates(SparseVec v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  struct Row {
    SparseVec vec;
    SparseVec combo;
  };
  std::vector<Row> rows_;
  std::vector<std::size_t> pivot_row_;
  std::size_t inserted_ = 0;
};

std::size_t rank(const RationalMatrix& m);
/// Columns form a basis of ker(m).
RationalMatrix kernel_basis(const RationalMatrix& m);
/// Inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);
/// Kronecker product; row and column indices of `a` are the major digits.
RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b);

/// Graded sequence of finite-dimensional spaces; boundaries[i] maps degree i
/// to degree i-1 (boundaries[0] has zero rows).
struct ChainComplex {
  std::vector<std::size_t> dims;
  std::vector<RationalMatrix> boundaries;

  /// First degree i with boundaries[i-1]*boundaries[i] != 0, or a shape error.
  std::optional<std::size_t> first_d2_failure() const;
  bool shapes_consistent() const;
};

/// dim H_i for every degree. Throws std::domain_error naming the degree when
/// d^2 != 0.
std::vector<std::size_t> homology_dims(const ChainComplex& c);

long euler_characteristic(const std::vector<std::size_t>& dims);

}  // namespace propkoszul
