#include "weil/derivations.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "weil/linalg.hpp"

namespace weil {

namespace {

template <class T>
BasicElement<T> apply_matrix(const Matrix<T>& m, const BasicElement<T>& u) {
  return BasicElement<T>(u.algebra(), m * std::span<const T>(u.coeffs()));
}

Element column_element(const WeilAlgebra& a, const Matrix<Rational>& d, std::size_t j) {
  return Element(a, d.column(j));
}

}  // namespace

Rational leibniz_residual(const WeilAlgebra& algebra, const Matrix<Rational>& d) {
  const std::size_t s = algebra.dim();
  if (d.rows() != s || d.cols() != s)
    throw Error(ErrorKind::DimensionMismatch, "derivation matrix must be " + std::to_string(s) + "x" + std::to_string(s));
  std::vector<Element> images;
  std::vector<Element> basis;
  for (std::size_t j = 0; j < s; ++j) {
    images.push_back(column_element(algebra, d, j));
    basis.push_back(Element::basis(algebra, j));
  }
  Rational worst = 0;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j) {
      const Element prod = basis[i] * basis[j];
      const Element lhs = apply_matrix(d, prod);
      const Element rhs = images[i] * basis[j] + basis[i] * images[j];
      for (std::size_t k = 0; k < s; ++k) {
        const Rational r = abs(lhs[k] - rhs[k]);
        if (r > worst) worst = r;
      }
    }
  return worst;
}

Derivation::Derivation(WeilAlgebra algebra, Matrix<Rational> matrix)
    : algebra_(std::move(algebra)), matrix_(std::move(matrix)) {
  if (leibniz_residual(algebra_, matrix_) != 0)
    throw Error(ErrorKind::NotADerivation, "matrix violates the Leibniz rule");
}

Derivation Derivation::zero(const WeilAlgebra& algebra) {
  return Derivation(algebra, Matrix<Rational>(algebra.dim(), algebra.dim()), Unchecked{});
}

Matrix<double> Derivation::real_matrix() const {
  Matrix<double> m(matrix_.rows(), matrix_.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = matrix_(i, j).get_d();
  return m;
}

Element Derivation::operator()(const Element& u) const {
  u.check_same(Element::zero(algebra_));
  return apply_matrix(matrix_, u);
}

RealElement Derivation::operator()(const RealElement& u) const {
  u.check_same(RealElement::zero(algebra_));
  return apply_matrix(real_matrix(), u);
}

Derivation operator+(const Derivation& a, const Derivation& b) {
  if (!(a.algebra_ == b.algebra_)) throw Error(ErrorKind::AlgebraMismatch, "sum of derivations of different algebras");
  return Derivation(a.algebra_, a.matrix_ + b.matrix_, Derivation::Unchecked{});
}

Derivation operator*(const Rational& c, const Derivation& d) {
  return Derivation(d.algebra_, c * d.matrix_, Derivation::Unchecked{});
}

std::vector<Derivation> derivation_basis(const WeilAlgebra& algebra) {
  const std::size_t s = algebra.dim();
  const std::size_t unknowns = s * s;
  auto var = [s](std::size_t row, std::size_t col) { return row * s + col; };

  // Rows: D(a_0) = 0, then Leibniz on every pair i <= j, coordinate k.
  // Most Leibniz rows are redundant, so they are filtered as they come.
  RowSpaceBuilder eqs(unknowns);
  for (std::size_t k = 0; k < s; ++k) eqs.add({{var(k, 0), Rational(1)}});
  std::map<std::size_t, Rational> e;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j)
      for (std::size_t k = 0; k < s; ++k) {
        e.clear();
        for (const ProductTerm& t : algebra.product(i, j)) e[var(k, t.k)] += t.exact;
        for (std::size_t l = 0; l < s; ++l) {
          for (const ProductTerm& t : algebra.product(l, j))
            if (t.k == k) e[var(l, i)] -= t.exact;
          for (const ProductTerm& t : algebra.product(i, l))
            if (t.k == k) e[var(l, j)] -= t.exact;
        }
        SparseRow row;
        for (auto& [c, v] : e)
          if (v != 0) row.emplace_back(c, v);
        eqs.add(std::move(row));
      }
  const auto kernel = nullspace(eqs.matrix());
  if (kernel.empty()) return {};

  const Echelon canonical = row_reduce(rows_to_matrix(kernel, unknowns));
  std::vector<Derivation> basis;
  for (std::size_t r = 0; r < canonical.rank(); ++r) {
    Matrix<Rational> d(s, s);
    for (std::size_t u = 0; u < unknowns; ++u) d(u / s, u % s) = canonical.reduced(r, u);
    basis.emplace_back(algebra, std::move(d));
  }
  if (s == 2 && basis.size() == 1) {
    const Rational lead = basis[0].matrix()(1, 1);
    if (lead != 0) {
      const Rational scale = Rational(-1) / lead;
      basis[0] = scale * basis[0];
    }
  }
  return basis;
}

Derivation bracket(const Derivation& d1, const Derivation& d2) {
  if (!(d1.algebra() == d2.algebra())) throw Error(ErrorKind::AlgebraMismatch, "bracket of derivations of different algebras");
  return Derivation(d1.algebra(), d1.matrix() * d2.matrix() - d2.matrix() * d1.matrix());
}

Derivation module_scale(const Element& a, const Derivation& d) {
  if (!(a.algebra() == d.algebra())) throw Error(ErrorKind::AlgebraMismatch, "scaling a derivation by a foreign element");
  return Derivation(d.algebra(), multiplication_operator(a) * d.matrix());
}

RealElement Automorphism::operator()(const RealElement& u) const {
  u.check_same(RealElement::zero(algebra_));
  return apply_matrix(matrix_, u);
}

double Automorphism::multiplicativity_residual(const RealElement& u, const RealElement& v) const {
  const RealElement lhs = (*this)(u * v);
  const RealElement rhs = (*this)(u) * (*this)(v);
  double worst = 0.0;
  for (std::size_t k = 0; k < lhs.dim(); ++k) worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
  return worst;
}

Matrix<double> expm(const Matrix<double>& m) {
  const std::size_t n = m.rows();
  double norm = 0.0;  // max column sum
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(m(i, j));
    norm = std::max(norm, col);
  }
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix<double> a = m * std::ldexp(1.0, -squarings);

  Matrix<double> sum = Matrix<double>::identity(n);
  Matrix<double> term = Matrix<double>::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * a * (1.0 / k);
    sum += term;
    double tn = 0.0;
    for (double x : term.data()) tn = std::max(tn, std::abs(x));
    if (tn == 0.0 || tn < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

Automorphism exp_flow(const Derivation& d, double t) {
  return Automorphism(d.algebra(), expm(t * d.real_matrix()));
}

LieStructure::LieStructure(std::vector<Derivation> basis, std::vector<Rational> constants)
    : basis_(std::move(basis)), constants_(std::move(constants)) {
  const std::size_t r = basis_.size();
  if (constants_.size() != r * r * r)
    throw Error(ErrorKind::DimensionMismatch, "Lie structure constants must have r^3 entries");
}

const Rational& LieStructure::constant(std::size_t i, std::size_t j, std::size_t k) const {
  const std::size_t r = basis_.size();
  return constants_.at((i * r + j) * r + k);
}

bool LieStructure::is_abelian() const {
  for (const auto& c : constants_)
    if (c != 0) return false;
  return true;
}

Rational LieStructure::antisymmetry_residual() const {
  const std::size_t r = dim();
  Rational worst = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        const Rational d = abs(constant(i, j, k) + constant(j, i, k));
        if (d > worst) worst = d;
      }
  return worst;
}

Rational LieStructure::jacobi_residual() const {
  const std::size_t r = dim();
  // Nonzero constants of each bracket [d_i, d_j].
  std::vector<std::vector<std::pair<std::size_t, Rational>>> nz(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t m = 0; m < r; ++m)
        if (constant(i, j, m) != 0) nz[i * r + j].emplace_back(m, constant(i, j, m));

  Rational worst = 0;
  std::vector<Rational> sum(r);
  auto add = [&](std::size_t a, std::size_t b, std::size_t c) {
    for (const auto& [m, x] : nz[a * r + b])
      for (const auto& [l, y] : nz[m * r + c]) sum[l] += x * y;
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        std::fill(sum.begin(), sum.end(), Rational(0));
        add(i, j, k);
        add(j, k, i);
        add(k, i, j);
        for (const auto& x : sum)
          if (abs(x) > worst) worst = abs(x);
      }
  return worst;
}

LieStructure lie_structure(std::vector<Derivation> basis) {
  const std::size_t r = basis.size();
  if (r == 0) return LieStructure({}, {});
  const WeilAlgebra& a = basis.front().algebra();
  const std::size_t s = a.dim();
  for (const auto& d : basis)
    if (!(d.algebra() == a)) throw Error(ErrorKind::AlgebraMismatch, "Lie basis over different algebras");

  // Columns of `span` are the flattened basis derivations.
  Matrix<Rational> span(s * s, r);
  for (std::size_t k = 0; k < r; ++k) {
    const auto v = basis[k].flatten();
    for (std::size_t u = 0; u < s * s; ++u) span(u, k) = v[u];
  }
  // r independent rows of `span` give an invertible r x r block; its
  // inverse yields candidate coordinates, which are then checked in full.
  const Echelon rows = row_reduce(span.transpose());
  if (rows.rank() < r) throw Error(ErrorKind::NotClosed, "Lie basis is linearly dependent");
  Matrix<Rational> block(r, r);
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t k = 0; k < r; ++k) block(p, k) = span(rows.pivots[p], k);
  const Matrix<Rational> block_inv = *inverse(block);

  std::vector<Rational> constants(r * r * r, Rational(0));
  std::vector<Rational> picked(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      const Matrix<Rational> b = basis[i].matrix() * basis[j].matrix() - basis[j].matrix() * basis[i].matrix();
      const auto& v = b.data();
      for (std::size_t p = 0; p < r; ++p) picked[p] = v[rows.pivots[p]];
      const auto coords = block_inv * std::span<const Rational>(picked);
      if (span * std::span<const Rational>(coords) != v)
        throw Error(ErrorKind::NotClosed,
                    "[d" + std::to_string(i) + ", d" + std::to_string(j) + "] leaves the span of the basis");
      for (std::size_t k = 0; k < r; ++k) {
        constants[(i * r + j) * r + k] = coords[k];
        constants[(j * r + i) * r + k] = -coords[k];
      }
    }
  return LieStructure(std::move(basis), std::move(constants));
}

}  // namespace weil
