#pragma once

#include <vector>

#include "weil/algebra.hpp"
#include "weil/matrix.hpp"

namespace weil {

/// Element of Der(A): a linear map D with D(uv) = D(u)v + uD(v). The matrix
/// columns are the images of the basis elements.
class Derivation {
 public:
  /// Throws NotADerivation unless the Leibniz residual vanishes exactly.
  Derivation(WeilAlgebra algebra, Matrix<Rational> matrix);

  static Derivation zero(const WeilAlgebra& algebra);

  const WeilAlgebra& algebra() const noexcept { return algebra_; }
  const Matrix<Rational>& matrix() const noexcept { return matrix_; }
  Matrix<double> real_matrix() const;
  bool is_zero() const { return matrix_.is_zero(); }

  Element operator()(const Element& u) const;
  RealElement operator()(const RealElement& u) const;

  /// Row-major entries, the coordinate vector used by the Leibniz solver.
  std::vector<Rational> flatten() const { return matrix_.data(); }

  friend Derivation operator+(const Derivation& a, const Derivation& b);
  friend Derivation operator*(const Rational& c, const Derivation& d);
  friend bool operator==(const Derivation& a, const Derivation& b) {
    return a.algebra_ == b.algebra_ && a.matrix_ == b.matrix_;
  }

 private:
  struct Unchecked {};
  Derivation(WeilAlgebra algebra, Matrix<Rational> matrix, Unchecked)
      : algebra_(std::move(algebra)), matrix_(std::move(matrix)) {}

  WeilAlgebra algebra_;
  Matrix<Rational> matrix_;
};

/// Largest |D(a_i a_j) - D(a_i) a_j - a_i D(a_j)| coordinate over all
/// basis pairs; exactly zero for derivations.
Rational leibniz_residual(const WeilAlgebra& algebra, const Matrix<Rational>& d);

/// Basis of Der(A) from the exact nullspace of the Leibniz system. The
/// basis is the reduced row echelon form of the solution space in
/// row-major entry order, so every element has a leading entry 1. For
/// two-dimensional algebras (all isomorphic to the dual numbers) the
/// generator is rescaled to send the nilpotent basis element e to -e.
std::vector<Derivation> derivation_basis(const WeilAlgebra& algebra);

/// [d1, d2] = D1 D2 - D2 D1.
Derivation bracket(const Derivation& d1, const Derivation& d2);

/// The derivation u -> a . d(u).
Derivation module_scale(const Element& a, const Derivation& d);

/// Algebra automorphism with floating matrix.
class Automorphism {
 public:
  Automorphism(WeilAlgebra algebra, Matrix<double> matrix) : algebra_(std::move(algebra)), matrix_(std::move(matrix)) {}

  const WeilAlgebra& algebra() const noexcept { return algebra_; }
  const Matrix<double>& matrix() const noexcept { return matrix_; }

  RealElement operator()(const RealElement& u) const;

  /// max_k |Phi(uv) - Phi(u)Phi(v)|_k.
  double multiplicativity_residual(const RealElement& u, const RealElement& v) const;

 private:
  WeilAlgebra algebra_;
  Matrix<double> matrix_;
};

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
Matrix<double> expm(const Matrix<double>& m);

/// exp(tD), a one-parameter subgroup of Aut(A).
Automorphism exp_flow(const Derivation& d, double t);

/// Structure constants of a Lie algebra of derivations in a fixed basis.
class LieStructure {
 public:
  LieStructure(std::vector<Derivation> basis, std::vector<Rational> constants);

  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Derivation>& basis() const noexcept { return basis_; }
  /// gamma with [d_i, d_j] = sum_k gamma(i, j, k) d_k.
  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const;
  bool is_abelian() const;
  /// Largest |antisymmetry defect| over all index triples.
  Rational antisymmetry_residual() const;
  /// Largest |Jacobi defect| in structure-constant form.
  Rational jacobi_residual() const;

 private:
  std::vector<Derivation> basis_;
  std::vector<Rational> constants_;
};

/// Expands every bracket of basis elements in the basis by an exact solve.
/// Throws NotClosed if some bracket leaves the span.
LieStructure lie_structure(std::vector<Derivation> basis);

}  // namespace weil
