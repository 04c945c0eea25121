#include <doctest.h>

#include "support.hpp"
#include "weil/algebra.hpp"

using namespace weil;
using namespace weil::testing;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::NotADerivation;
}

StructureTable zero_table(std::size_t s) {
  return StructureTable(s, std::vector<std::vector<Rational>>(s, std::vector<Rational>(s, Rational(0))));
}

StructureTable r_times_r() {
  auto c = zero_table(2);
  c[0][0][0] = 1;
  c[1][1][1] = 1;
  return c;
}

// Unit first: e0 is the identity on every basis element.
StructureTable with_unit(std::size_t s) {
  auto c = zero_table(s);
  for (std::size_t i = 0; i < s; ++i) c[0][i][i] = c[i][0][i] = 1;
  return c;
}

// dim m^p for p = 0..height+1 by spanning products of basis vectors.
std::vector<std::size_t> filtration_oracle(const WeilAlgebra& a) {
  const std::size_t s = a.dim();
  std::vector<Element> m;
  for (std::size_t i = 1; i < s; ++i) m.push_back(Element::basis(a, i));
  std::vector<std::size_t> dims{s};
  std::vector<Element> power = m;
  while (true) {
    Matrix<Rational> span(power.size(), s);
    for (std::size_t r = 0; r < power.size(); ++r)
      for (std::size_t c = 0; c < s; ++c) span(r, c) = power[r][c];
    dims.push_back(power.empty() ? 0 : naive_rank(span));
    if (dims.back() == 0) break;
    std::vector<Element> next;
    for (const auto& u : power)
      for (const auto& v : m) next.push_back(u * v);
    power = next;
  }
  return dims;
}

}  // namespace

TEST_CASE("dual numbers") {
  const auto d = dual_numbers();
  CHECK(d.dim() == 2);
  CHECK(d.height() == 1);
  CHECK(d.width() == 1);
  CHECK(d.labels() == std::vector<std::string>{"1", "ε"});
  const auto eps = Element::basis(d, 1);
  CHECK((eps * eps).is_zero());
  CHECK(to_string(Element::scalar(d, Rational(2)) + Rational(3) * eps) == "2 + 3·ε");
}

TEST_CASE("truncated polynomial dimensions, heights and widths") {
  const auto a = truncated_polynomial_algebra(1, 2);
  CHECK(a.dim() == 3);
  CHECK(a.height() == 2);
  CHECK(a.width() == 1);
  const auto b = truncated_polynomial_algebra(2, 1);
  CHECK(b.dim() == 3);
  CHECK(b.height() == 1);
  CHECK(b.width() == 2);
  CHECK(truncated_polynomial_algebra(2, 2).labels() ==
        std::vector<std::string>{"1", "x", "y", "x^2", "x*y", "y^2"});
}

TEST_CASE("dimension law C(s+k, k) against the standard-monomial count") {
  for (unsigned s = 1; s <= 3; ++s)
    for (unsigned k = 1; k <= 4; ++k) {
      // (x1..xs)^{k+1} is generated by all monomials of degree k+1.
      std::vector<Monomial> gens;
      std::vector<unsigned> e(s, 0);
      while (true) {
        unsigned deg = 0;
        for (auto x : e) deg += x;
        if (deg == k + 1) gens.emplace_back(e);
        std::size_t pos = 0;
        while (pos < s && ++e[pos] == k + 2) e[pos++] = 0;
        if (pos == s) break;
      }
      const auto expected = count_standard_monomials(s, gens, k + 2);
      CHECK(expected == binomial(s + k, k));
      const auto a = truncated_polynomial_algebra(s, k);
      CHECK(a.dim() == expected);
      CHECK(a.height() == k);
      CHECK(a.width() == s);
    }
}

TEST_CASE("monomial quotient basis") {
  const std::vector<Monomial> rel{Monomial({2, 0}), Monomial({0, 3}), Monomial({1, 1})};
  const auto a = monomial_quotient_algebra({"x", "y"}, rel);
  CHECK(a.labels() == std::vector<std::string>{"1", "x", "y", "y^2"});
  CHECK(a.dim() == count_standard_monomials(2, rel, 6));
  CHECK(a.height() == 2);
  CHECK(a.width() == 2);
  CHECK(kind_of([] { monomial_quotient_algebra({"x", "y"}, {Monomial({2, 0})}); }) == ErrorKind::InfiniteDimensional);
  CHECK(kind_of([] { monomial_quotient_algebra({"x"}, {Monomial({0})}); }) == ErrorKind::NotLocal);
}

TEST_CASE("R x R is rejected as not local") {
  const auto c = r_times_r();
  // The idempotent scan finds (1,0) and (0,1) besides the unit (1,1).
  const auto idem = grid_idempotents(c);
  CHECK(idem.size() == 3);
  CHECK(kind_of([&] { from_structure_constants({}, c); }) == ErrorKind::NotLocal);
}

TEST_CASE("Weil algebras have no nontrivial idempotents") {
  for (const auto& [name, a] : standard_algebras()) {
    if (a.dim() > 4) continue;
    CAPTURE(name);
    const auto idem = grid_idempotents(a.table());
    REQUIRE(idem.size() == 1);
    CHECK(idem[0][0] == 1);
  }
}

TEST_CASE("axiom violations") {
  CHECK(kind_of([] { from_structure_constants({}, zero_table(1)); }) == ErrorKind::NoUnit);

  auto nc = with_unit(2);
  nc[1][1][1] = 1;
  auto broken = nc;
  broken[1][0][1] = 0;
  CHECK(kind_of([&] { from_structure_constants({}, broken); }) == ErrorKind::NotCommutative);

  // a*a = b, a*b = a, b*b = 0: (aa)b = 0 but a(ab) = b.
  auto na = with_unit(3);
  na[1][1][2] = 1;
  na[1][2][1] = na[2][1][1] = 1;
  CHECK(kind_of([&] { from_structure_constants({}, na); }) == ErrorKind::NotAssociative);

  auto ragged = zero_table(2);
  ragged[1].pop_back();
  CHECK(kind_of([&] { from_structure_constants({}, ragged); }) == ErrorKind::MalformedTable);
  CHECK(kind_of([&] { from_structure_constants({"1"}, with_unit(2)); }) == ErrorKind::MalformedTable);
}

TEST_CASE("basis is normalized when the unit is not first") {
  // Dual numbers in the basis (e, u) = (eps, 1 + eps): e*u = e, u*u = u + e.
  auto c = zero_table(2);
  c[0][1][0] = c[1][0][0] = 1;
  c[1][1][0] = 1;
  c[1][1][1] = 1;
  const auto a = from_structure_constants({"e", "u"}, c);
  CHECK(a.dim() == 2);
  CHECK(a.height() == 1);
  const auto n = Element::basis(a, 1);
  CHECK((n * n).is_zero());
  CHECK(a.label(1) == "e");
}

TEST_CASE("round trip through the structure constants") {
  for (const auto& [name, a] : standard_algebras()) {
    CAPTURE(name);
    const auto b = from_structure_constants(a.labels(), a.table());
    CHECK(b == a);
    CHECK(b.height() == a.height());
  }
}

TEST_CASE("filtration and nilpotency") {
  Rng rng(31);
  for (const auto& [name, a] : standard_algebras()) {
    CAPTURE(name);
    CHECK(a.filtration_dims() == filtration_oracle(a));
    const std::size_t s = a.dim();
    for (std::size_t i = 1; i < s; ++i) {
      const auto l = multiplication_operator(Element::basis(a, i));
      Matrix<Rational> p = Matrix<Rational>::identity(s);
      for (std::size_t k = 0; k < s; ++k) p = p * l;
      CHECK(p.is_zero());
    }
    bool reaches_height = a.height() == 0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto u = rng.nilpotent(a);
      CHECK(u.pow(a.height() + 1).is_zero());
      if (a.height() > 0 && !u.pow(a.height()).is_zero()) reaches_height = true;
    }
    CHECK(reaches_height);
  }
}

TEST_CASE("scalar and nilpotent parts") {
  const auto d = dual_numbers();
  const Element u(d, {q(3, 2), q(-1)});
  const auto [lambda, mu] = split_scalar_nilpotent(u);
  CHECK(lambda == q(3, 2));
  CHECK(mu == Element(d, {q(0), q(-1)}));
  CHECK(Element::scalar(d, lambda) + mu == u);
}

TEST_CASE("evaluation of polynomials in the algebra") {
  const auto d = dual_numbers();
  const auto f = parse_polynomial("x1^2", 1);
  const std::vector<Element> arg{Element(d, {q(5), q(7)})};
  CHECK(evaluate_in_algebra<Rational>(f, arg) == Element(d, {q(25), q(70)}));

  // x*y at (t, t^2) in R[t]/(t^3) vanishes.
  const auto a = truncated_polynomial_algebra(1, 2);
  const std::vector<Element> args{Element::basis(a, 1), Element::basis(a, 2)};
  CHECK(evaluate_in_algebra<Rational>(parse_polynomial("x1*x2", 2), args).is_zero());
  CHECK(evaluate_in_algebra<Rational>(parse_polynomial("x1^2", 2), args) == Element::basis(a, 2));

  CHECK(kind_of([&] { evaluate_in_algebra<Rational>(f, args); }) == ErrorKind::ArityMismatch);
}

TEST_CASE("elements of different algebras do not mix") {
  const auto u = Element::unit(dual_numbers());
  const auto v = Element::unit(truncated_polynomial_algebra(1, 2));
  CHECK(kind_of([&] { return u + v; }) == ErrorKind::AlgebraMismatch);
  CHECK(kind_of([&] { return u * v; }) == ErrorKind::AlgebraMismatch);
  CHECK(kind_of([&] { Element(dual_numbers(), {q(1)}); }) == ErrorKind::DimensionMismatch);
}
