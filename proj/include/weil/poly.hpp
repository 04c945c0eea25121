#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weil/rational.hpp"

namespace weil {

/// Exponent vector x1^e1 * ... * xn^en.
struct Monomial {
  std::vector<unsigned> exponents;

  Monomial() = default;
  explicit Monomial(std::vector<unsigned> e) : exponents(std::move(e)) {}
  static Monomial one(std::size_t num_vars) { return Monomial(std::vector<unsigned>(num_vars, 0)); }
  static Monomial variable(std::size_t num_vars, std::size_t i, unsigned power = 1);

  std::size_t num_vars() const noexcept { return exponents.size(); }
  unsigned degree() const noexcept;
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order with x1 > x2 > ... > xn.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Ascending degree, and within one degree x1^2 before x1*x2 before x2^2.
/// This is the order in which monomial bases of algebras are listed.
struct BasisOrderLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored; the zero polynomial has no terms.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Rational& c);
  static Polynomial variable(std::size_t num_vars, std::size_t i);
  static Polynomial term(const Monomial& m, const Rational& c);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const noexcept;
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(unsigned e) const;

  /// Formal partial derivative with respect to variable `var`.
  Polynomial partial(std::size_t var) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Substitutes polynomial `images[i]` (all in a common ring) for variable i.
  Polynomial compose(std::span<const Polynomial> images) const;

  /// Terms printed in descending graded-lex order, e.g. "x1^2*x2 - 3/2*x1".
  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;

 private:
  void check_same_ring(const Polynomial& o) const;

  std::size_t num_vars_;
  Terms terms_;
};

std::vector<std::string> default_variable_names(std::size_t num_vars);

/// Parses `+ - * ^`, parentheses and integer or p/q literals over the given
/// variable names. Throws ParseError carrying the offending position.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);
/// Same, over the variables x1..xn.
Polynomial parse_polynomial(std::string_view text, std::size_t num_vars);

}  // namespace weil
