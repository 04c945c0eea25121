#pragma once

#include <map>
#include <string>
#include <vector>

#include "weil/algebra.hpp"
#include "weil/poly.hpp"

namespace weil {

/// Chart coordinate index of x_i^j = a_j^*(xi_i).
inline std::size_t chart_index(std::size_t s, std::size_t i, std::size_t j) { return i * s + j; }

/// Dimension of the chart model of (R^n)^A.
inline std::size_t chart_dimension(const WeilAlgebra& a, std::size_t n) { return n * a.dim(); }

/// Names of the chart coordinates: x1, y1, x2, y2, ... for two-dimensional
/// algebras, x1_0, x1_1, ... otherwise.
std::vector<std::string> chart_variable_names(const WeilAlgebra& a, std::size_t n);

/// Near point of R^n of kind A in the chart model: n algebra elements whose
/// scalar parts are the coordinates of the base point.
template <class T>
class BasicNearPoint {
 public:
  BasicNearPoint(WeilAlgebra algebra, std::vector<BasicElement<T>> components)
      : algebra_(std::move(algebra)), components_(std::move(components)) {
    if (components_.empty()) throw Error(ErrorKind::ArityMismatch, "near point needs at least one component");
    for (const auto& c : components_)
      if (!(c.algebra() == algebra_)) throw Error(ErrorKind::AlgebraMismatch, "near point component from another algebra");
  }

  static BasicNearPoint from_chart(const WeilAlgebra& a, std::size_t n, const std::vector<T>& coords) {
    const std::size_t s = a.dim();
    if (coords.size() != n * s)
      throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(n * s) + " chart coordinates");
    std::vector<BasicElement<T>> comps;
    for (std::size_t i = 0; i < n; ++i)
      comps.emplace_back(a, std::vector<T>(coords.begin() + i * s, coords.begin() + (i + 1) * s));
    return BasicNearPoint(a, std::move(comps));
  }

  const WeilAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t n() const noexcept { return components_.size(); }
  const std::vector<BasicElement<T>>& components() const noexcept { return components_; }
  const BasicElement<T>& component(std::size_t i) const { return components_.at(i); }

  std::vector<T> base() const {
    std::vector<T> p;
    for (const auto& c : components_) p.push_back(c.scalar_part());
    return p;
  }

  std::vector<T> chart_coordinates() const {
    std::vector<T> x;
    for (const auto& c : components_) x.insert(x.end(), c.coeffs().begin(), c.coeffs().end());
    return x;
  }

  /// True when every nilpotent part vanishes (the canonical copy of R^n).
  bool on_zero_section() const {
    for (const auto& c : components_)
      if (!c.nilpotent_part().is_zero()) return false;
    return true;
  }

  friend bool operator==(const BasicNearPoint&, const BasicNearPoint&) = default;

 private:
  WeilAlgebra algebra_;
  std::vector<BasicElement<T>> components_;
};

using NearPoint = BasicNearPoint<Rational>;
using RealNearPoint = BasicNearPoint<double>;

/// xi_i = base_i . 1 + nilparts_i. Throws NonzeroScalarPart if some
/// nilpart is outside m.
template <class T>
BasicNearPoint<T> make_near_point(const WeilAlgebra& a, const std::vector<T>& base,
                                  const std::vector<BasicElement<T>>& nilparts) {
  if (base.size() != nilparts.size())
    throw Error(ErrorKind::ArityMismatch, std::to_string(base.size()) + " base coordinates but " +
                                              std::to_string(nilparts.size()) + " nilpotent parts");
  std::vector<BasicElement<T>> comps;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto& mu = nilparts[i];
    if (!(mu.algebra() == a)) throw Error(ErrorKind::AlgebraMismatch, "nilpotent part from another algebra");
    if (mu.scalar_part() != T(0))
      throw Error(ErrorKind::NonzeroScalarPart, "nilpotent part " + std::to_string(i + 1) + " is not in m");
    comps.push_back(BasicElement<T>::scalar(a, base[i]) + mu);
  }
  return BasicNearPoint<T>(a, std::move(comps));
}

RealNearPoint to_real(const NearPoint& xi);

/// f^A(xi) = xi(f).
template <class T>
BasicElement<T> eval_fA(const Polynomial& f, const BasicNearPoint<T>& xi) {
  return evaluate_in_algebra<T>(f, xi.components());
}

/// Jet of a smooth function at a point: partials[alpha] = d^alpha f(p) / alpha!.
struct TaylorOracle {
  std::vector<double> base;
  std::map<std::vector<unsigned>, double> partials;
};

/// Jet of a polynomial up to total order `order`, computed by formal differentiation.
TaylorOracle taylor_oracle_of(const Polynomial& f, const std::vector<double>& base, unsigned order);

/// sum_{|alpha| <= height} (d^alpha f(p) / alpha!) mu^alpha. Throws
/// BasePointMismatch or MissingPartial.
RealElement eval_fA_taylor(const TaylorOracle& oracle, const RealNearPoint& xi);

/// f^A on the generic near point xi_i = sum_j x_i^j a_j, as an A-valued
/// polynomial in the n*s chart coordinates.
PolyElement lift_symbolic(const Polynomial& f, const WeilAlgebra& a);

/// The s chart polynomials a_j^* o f^A.
std::vector<Polynomial> gamma_components(const Polynomial& f, const WeilAlgebra& a, std::size_t n);

/// Evaluates every component polynomial at a chart point.
template <class T>
BasicElement<T> evaluate_at(const PolyElement& u, const BasicNearPoint<T>& xi) {
  const auto coords = xi.chart_coordinates();
  std::vector<T> out;
  for (const auto& p : u.coeffs()) out.push_back(p.evaluate(std::span<const T>(coords)));
  return BasicElement<T>(u.algebra(), std::move(out));
}

/// Polynomial vector field on the chart R^{n s}: a derivation of the chart
/// polynomial ring given by its values on the coordinates.
class ChartVectorField {
 public:
  ChartVectorField(WeilAlgebra algebra, std::size_t n, std::vector<Polynomial> components);
  static ChartVectorField zero(const WeilAlgebra& a, std::size_t n);

  const WeilAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t s() const noexcept { return algebra_.dim(); }
  const std::vector<Polynomial>& components() const noexcept { return components_; }
  const Polynomial& component(std::size_t i, std::size_t j) const { return components_.at(chart_index(s(), i, j)); }

  /// X(g) = sum_v X^v dg/dx_v.
  Polynomial apply(const Polynomial& g) const;

  /// Lie bracket [X, Y] of polynomial vector fields.
  friend ChartVectorField lie_bracket(const ChartVectorField& x, const ChartVectorField& y);

  /// "y1 ∂/∂y1 + y2 ∂/∂y2"; "0" for the zero field.
  std::string to_string() const;

  friend bool operator==(const ChartVectorField&, const ChartVectorField&) = default;

 private:
  WeilAlgebra algebra_;
  std::size_t n_;
  std::vector<Polynomial> components_;
};

/// sigma^{-1} o (id_A (x) X) o gamma applied to f, as an A-valued chart polynomial.
PolyElement derivation_form(const ChartVectorField& x, const Polynomial& f);

/// The derivation form evaluated at a near point.
Element to_derivation_form(const ChartVectorField& x, const Polynomial& f, const NearPoint& xi);

/// Inverse correspondence: the chart field whose derivation form sends
/// the coordinate function x_i to values[i].
ChartVectorField from_derivation_form(const WeilAlgebra& a, std::size_t n, const std::vector<PolyElement>& values);

}  // namespace weil
