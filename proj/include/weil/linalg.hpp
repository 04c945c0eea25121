#pragma once

#include <optional>
#include <utility>
#include <span>
#include <vector>

#include "weil/matrix.hpp"
#include "weil/rational.hpp"

namespace weil {

/// Reduced row echelon form of an exact matrix. Elimination is
/// fraction-free (Bareiss) over the integers after clearing row
/// denominators; rationals only appear in the final normalization.
struct Echelon {
  Matrix<Rational> reduced;          ///< RREF, zero rows trailing
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

Echelon row_reduce(const Matrix<Rational>& m);

std::size_t rank(const Matrix<Rational>& m);

/// Basis of {x : m x = 0}. Vector k has a 1 at the k-th free column and
/// zeros at the other free columns.
std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& m);

/// Some exact solution of m x = b, or nullopt if the system is inconsistent.
std::optional<std::vector<Rational>> solve(const Matrix<Rational>& m, std::span<const Rational> b);

std::optional<Matrix<Rational>> inverse(const Matrix<Rational>& m);

/// Rank by Gaussian elimination with complete pivoting; entries whose
/// magnitude is at most `tol * max(1, max|m_ij|)` count as zero.
std::size_t numeric_rank(Matrix<double> m, double tol);

/// Matrix whose rows are the given vectors (all of equal length).
Matrix<Rational> rows_to_matrix(const std::vector<std::vector<Rational>>& rows, std::size_t cols);

/// Sparse row: (column, value) pairs with strictly increasing columns and
/// no zero values.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Collects independent rows one at a time. Each row is reduced against the
/// rows kept so far and stored only if something survives, so long streams
/// of redundant equations stay cheap.
class RowSpaceBuilder {
 public:
  explicit RowSpaceBuilder(std::size_t cols) : cols_(cols), by_lead_(cols, npos) {}

  /// True if the row was independent of the rows already kept.
  bool add(SparseRow row);
  std::size_t rank() const noexcept { return rows_.size(); }
  /// Kept rows as a dense matrix (same row space as everything added).
  Matrix<Rational> matrix() const;

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t cols_;
  std::vector<SparseRow> rows_;        // leading entry normalized to 1
  std::vector<std::size_t> by_lead_;  // column -> index in rows_
};

}  // namespace weil
