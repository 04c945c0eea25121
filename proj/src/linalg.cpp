#include "weil/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace weil {

namespace {

// Scale each row by the lcm of its denominators so every entry is an integer.
Matrix<Integer> clear_denominators(const Matrix<Rational>& m) {
  Matrix<Integer> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (const Rational& q : m.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& q = m(i, j);
      out(i, j) = q.get_num() * (l / q.get_den());
    }
  }
  return out;
}

}  // namespace

Echelon row_reduce(const Matrix<Rational>& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Matrix<Integer> a = clear_denominators(m);

  // Bareiss: after step r every entry below the pivot rows is a minor of
  // the input, so the division by the previous pivot is exact.
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t p = r;
    while (p < rows && a(p, col) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    const Integer pivot = a(r, col);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Integer lead = a(i, col);
      for (std::size_t j = col + 1; j < cols; ++j) {
        Integer t = pivot * a(i, j) - lead * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, col) = 0;
    }
    prev = pivot;
    pivots.push_back(col);
    ++r;
  }

  // Back substitution in rationals on the (small) echelon form.
  Matrix<Rational> red(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) red(i, j) = Rational(a(i, j));
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const std::size_t pc = pivots[k];
    const Rational inv = 1 / red(k, pc);
    for (std::size_t j = 0; j < cols; ++j) red(k, j) *= inv;
    for (std::size_t i = 0; i < k; ++i) {
      if (red(i, pc) == 0) continue;
      const Rational f = red(i, pc);
      for (std::size_t j = 0; j < cols; ++j) red(i, j) -= f * red(k, j);
    }
  }
  return {std::move(red), std::move(pivots)};
}

std::size_t rank(const Matrix<Rational>& m) { return row_reduce(m).rank(); }

std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& m) {
  const Echelon e = row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t pc : e.pivots) is_pivot[pc] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const Matrix<Rational>& m, std::span<const Rational> b) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Matrix<Rational> aug(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j);
    aug(i, cols) = b[i];
  }
  const Echelon e = row_reduce(aug);
  if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = e.reduced(k, cols);
  return x;
}

std::optional<Matrix<Rational>> inverse(const Matrix<Rational>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) return std::nullopt;
  Matrix<Rational> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const Echelon e = row_reduce(aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<Rational> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::size_t numeric_rank(Matrix<double> m, double tol) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  double scale = 1.0;
  for (double x : m.data()) scale = std::max(scale, std::abs(x));
  const double threshold = tol * scale;

  std::vector<std::size_t> col_perm(cols);
  for (std::size_t j = 0; j < cols; ++j) col_perm[j] = j;
  std::size_t r = 0;
  for (; r < std::min(rows, cols); ++r) {
    double best = 0.0;
    std::size_t bi = r, bj = r;
    for (std::size_t i = r; i < rows; ++i)
      for (std::size_t j = r; j < cols; ++j) {
        const double v = std::abs(m(i, col_perm[j]));
        if (v > best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best <= threshold) break;
    if (bi != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(bi, j), m(r, j));
    std::swap(col_perm[bj], col_perm[r]);
    const double pivot = m(r, col_perm[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const double f = m(i, col_perm[r]) / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = r; j < cols; ++j) m(i, col_perm[j]) -= f * m(r, col_perm[j]);
    }
  }
  return r;
}

Matrix<Rational> rows_to_matrix(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  Matrix<Rational> m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

namespace {

// a - f * b for sorted sparse rows.
SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -f * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - f * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

bool RowSpaceBuilder::add(SparseRow row) {
  while (!row.empty()) {
    const std::size_t lead = row.front().first;
    const std::size_t k = by_lead_.at(lead);
    if (k == npos) break;
    const Rational f = row.front().second;
    row = axpy(row, f, rows_[k]);
  }
  if (row.empty()) return false;
  const Rational inv = 1 / row.front().second;
  for (auto& [c, v] : row) v *= inv;
  by_lead_[row.front().first] = rows_.size();
  rows_.push_back(std::move(row));
  return true;
}

Matrix<Rational> RowSpaceBuilder::matrix() const {
  Matrix<Rational> m(rows_.size(), cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [c, v] : rows_[i]) m(i, c) = v;
  return m;
}

}  // namespace weil
