#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weil/error.hpp"
#include "weil/matrix.hpp"
#include "weil/poly.hpp"
#include "weil/rational.hpp"

namespace weil {

/// c[i][j][k] with a_i * a_j = sum_k c[i][j][k] a_k.
using StructureTable = std::vector<std::vector<std::vector<Rational>>>;

/// One nonzero structure constant of a fixed product a_i * a_j.
struct ProductTerm {
  std::size_t k;
  Rational exact;
  double approx;
};

/// Finite-dimensional commutative unital local real algebra A = R.1 + m
/// with m nilpotent. Instances are always verified and normalized: basis
/// element 0 is the unit and elements 1..dim-1 span the maximal ideal.
/// Copies share the immutable table.
class WeilAlgebra {
 public:
  std::size_t dim() const noexcept;
  const std::vector<std::string>& labels() const noexcept;
  const std::string& label(std::size_t i) const { return labels().at(i); }

  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const;
  std::span<const ProductTerm> product(std::size_t i, std::size_t j) const;
  StructureTable table() const;

  /// Smallest k with m^{k+1} = 0.
  unsigned height() const noexcept;
  /// dim(m / m^2).
  std::size_t width() const noexcept;
  /// dim(m^p) for p = 0..height+1 (p = 0 is the whole algebra).
  const std::vector<std::size_t>& filtration_dims() const noexcept;

  /// Same table (identity first, structural comparison as fallback).
  friend bool operator==(const WeilAlgebra& a, const WeilAlgebra& b);

  struct Data;

 private:
  explicit WeilAlgebra(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  friend WeilAlgebra make_verified_algebra(std::vector<std::string>, StructureTable);

  std::shared_ptr<const Data> data_;
};

/// Verifies commutativity, associativity, unit and locality of an arbitrary
/// table, then changes basis so the unit comes first and the nilradical
/// follows. Throws Error with the failing axiom.
WeilAlgebra from_structure_constants(std::vector<std::string> labels, const StructureTable& c);

/// R[x1..xs]/(x1..xs)^{k+1}; basis = monomials of degree <= k.
WeilAlgebra truncated_polynomial_algebra(std::size_t s_vars, unsigned k, std::vector<std::string> names = {});

/// R[vars]/(relations) for a monomial ideal containing a pure power of
/// each variable; basis = standard monomials. Throws InfiniteDimensional.
WeilAlgebra monomial_quotient_algebra(std::vector<std::string> vars, const std::vector<Monomial>& relations);

/// D = R[eps]/(eps^2) with basis labels "1", "ε".
WeilAlgebra dual_numbers();

/// R itself (dim 1, m = 0).
WeilAlgebra real_numbers();

/// Default variable names for monomial algebras: x, y, z, then x1..xs.
std::vector<std::string> default_algebra_variables(std::size_t s_vars);

// ---------------------------------------------------------------------------
// Elements

template <class T>
struct CoefficientOps {
  static T zero_like(const T&) { return T(0); }
  static T from_rational(const Rational& q, const T&) { return T(q); }
  static T times(const ProductTerm& c, const T& x) { return c.exact * x; }
};

template <>
struct CoefficientOps<double> {
  static double zero_like(const double&) { return 0.0; }
  static double from_rational(const Rational& q, const double&) { return q.get_d(); }
  static double times(const ProductTerm& c, const double& x) { return c.approx * x; }
};

template <>
struct CoefficientOps<Polynomial> {
  static Polynomial zero_like(const Polynomial& like) { return Polynomial(like.num_vars()); }
  static Polynomial from_rational(const Rational& q, const Polynomial& like) {
    return Polynomial::constant(like.num_vars(), q);
  }
  static Polynomial times(const ProductTerm& c, const Polynomial& x) { return x * c.exact; }
};

/// Coefficient vector over the basis of a WeilAlgebra. T is Rational for
/// exact work, double for flows, Polynomial for symbolic chart functions.
template <class T>
class BasicElement {
 public:
  using Ops = CoefficientOps<T>;

  BasicElement(WeilAlgebra algebra, std::vector<T> coeffs) : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != algebra_.dim())
      throw Error(ErrorKind::DimensionMismatch, "element has " + std::to_string(coeffs_.size()) +
                                                    " coefficients, algebra has dimension " +
                                                    std::to_string(algebra_.dim()));
  }

  static BasicElement zero(const WeilAlgebra& a, const T& like = T(0)) {
    return BasicElement(a, std::vector<T>(a.dim(), Ops::zero_like(like)));
  }
  static BasicElement basis(const WeilAlgebra& a, std::size_t i, const T& like = T(0)) {
    BasicElement e = zero(a, like);
    e.coeffs_.at(i) = Ops::from_rational(Rational(1), like);
    return e;
  }
  static BasicElement unit(const WeilAlgebra& a, const T& like = T(0)) { return basis(a, 0, like); }
  static BasicElement scalar(const WeilAlgebra& a, const T& value) {
    BasicElement e = zero(a, value);
    e.coeffs_[0] = value;
    return e;
  }

  const WeilAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<T>& coeffs() const noexcept { return coeffs_; }
  const T& operator[](std::size_t i) const { return coeffs_.at(i); }
  T& operator[](std::size_t i) { return coeffs_.at(i); }
  std::size_t dim() const noexcept { return coeffs_.size(); }

  /// Augmentation A -> R.
  const T& scalar_part() const { return coeffs_[0]; }
  BasicElement nilpotent_part() const {
    BasicElement e = *this;
    e.coeffs_[0] = Ops::zero_like(coeffs_[0]);
    return e;
  }

  bool is_zero() const {
    for (const T& c : coeffs_)
      if (!(c == Ops::zero_like(c))) return false;
    return true;
  }

  BasicElement& operator+=(const BasicElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  BasicElement& operator-=(const BasicElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  BasicElement& operator*=(const T& s) {
    for (auto& c : coeffs_) c = c * s;
    return *this;
  }

  friend BasicElement operator+(BasicElement a, const BasicElement& b) { return a += b; }
  friend BasicElement operator-(BasicElement a, const BasicElement& b) { return a -= b; }
  friend BasicElement operator-(BasicElement a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend BasicElement operator*(BasicElement a, const T& s) { return a *= s; }
  friend BasicElement operator*(const T& s, BasicElement a) { return a *= s; }

  friend BasicElement operator*(const BasicElement& u, const BasicElement& v) {
    u.check_same(v);
    const std::size_t s = u.dim();
    BasicElement out = zero(u.algebra_, u.coeffs_[0]);
    for (std::size_t i = 0; i < s; ++i) {
      if (u.coeffs_[i] == Ops::zero_like(u.coeffs_[i])) continue;
      for (std::size_t j = 0; j < s; ++j) {
        if (v.coeffs_[j] == Ops::zero_like(v.coeffs_[j])) continue;
        const auto terms = u.algebra_.product(i, j);
        if (terms.empty()) continue;
        const T uv = u.coeffs_[i] * v.coeffs_[j];
        for (const ProductTerm& c : terms) out.coeffs_[c.k] += Ops::times(c, uv);
      }
    }
    return out;
  }

  BasicElement pow(unsigned e) const {
    BasicElement result = unit(algebra_, coeffs_[0]);
    BasicElement base = *this;
    while (e > 0) {
      if (e & 1u) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const BasicElement& a, const BasicElement& b) {
    return a.algebra_ == b.algebra_ && a.coeffs_ == b.coeffs_;
  }

  void check_same(const BasicElement& o) const {
    if (!(algebra_ == o.algebra_)) throw Error(ErrorKind::AlgebraMismatch, "elements of different algebras");
  }

 private:
  WeilAlgebra algebra_;
  std::vector<T> coeffs_;
};

using Element = BasicElement<Rational>;
using RealElement = BasicElement<double>;
/// A-valued polynomial function on a chart (one polynomial per basis element).
using PolyElement = BasicElement<Polynomial>;

/// (lambda, mu) with u = lambda.1 + mu and mu in m.
template <class T>
std::pair<T, BasicElement<T>> split_scalar_nilpotent(const BasicElement<T>& u) {
  return {u.scalar_part(), u.nilpotent_part()};
}

RealElement to_real(const Element& u);

/// Matrix of v -> a.v in the algebra basis (columns are images of basis elements).
Matrix<Rational> multiplication_operator(const Element& a);
Matrix<double> multiplication_operator(const RealElement& a);

/// "2 + 3·ε", "x + x^2"; PolyElement components are parenthesized as needed.
std::string to_string(const Element& u);
std::string to_string(const RealElement& u);
std::string to_string(const PolyElement& u, std::span<const std::string> chart_names);

/// Image of p under the homomorphism sending variable i to args[i]. This is
/// xi(f) for a near point xi with components args and a polynomial f.
template <class T>
BasicElement<T> evaluate_in_algebra(const Polynomial& p, std::span<const BasicElement<T>> args) {
  if (args.size() != p.num_vars())
    throw Error(ErrorKind::ArityMismatch, "polynomial in " + std::to_string(p.num_vars()) + " variables, " +
                                              std::to_string(args.size()) + " arguments");
  if (args.empty()) throw Error(ErrorKind::ArityMismatch, "evaluation needs at least one argument");
  const WeilAlgebra& a = args.front().algebra();
  for (const auto& x : args) args.front().check_same(x);
  const T& like = args.front()[0];
  using Ops = CoefficientOps<T>;

  // powers[i][e] = args[i]^e, filled lazily up to the largest exponent used.
  std::vector<std::vector<BasicElement<T>>> powers(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) powers[i].push_back(BasicElement<T>::unit(a, like));
  auto power = [&](std::size_t i, unsigned e) -> const BasicElement<T>& {
    while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * args[i]);
    return powers[i][e];
  };

  BasicElement<T> out = BasicElement<T>::zero(a, like);
  for (const auto& [m, c] : p.terms()) {
    BasicElement<T> t = BasicElement<T>::scalar(a, Ops::from_rational(c, like));
    for (std::size_t i = 0; i < args.size(); ++i)
      if (m.exponents[i] > 0) t = t * power(i, m.exponents[i]);
    out += t;
  }
  return out;
}

}  // namespace weil
