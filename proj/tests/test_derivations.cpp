#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "weil/derivations.hpp"
#include "weil/linalg.hpp"

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
  return ErrorKind::NotLocal;
}

Derivation from_entries(const WeilAlgebra& a, std::initializer_list<std::tuple<std::size_t, std::size_t, long>> es) {
  Matrix<Rational> m(a.dim(), a.dim());
  for (const auto& [i, j, v] : es) m(i, j) = v;
  return Derivation(a, m);
}

double max_abs_diff(const Matrix<double>& a, const Matrix<double>& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.data().size(); ++k) d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
  return d;
}

// Table of the same algebra in the basis b_i = sum_k p(k, i) a_k.
StructureTable change_basis(const WeilAlgebra& a, const Matrix<Rational>& p) {
  const std::size_t s = a.dim();
  const auto pinv = *inverse(p);
  StructureTable c(s, std::vector<std::vector<Rational>>(s, std::vector<Rational>(s)));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      const Element bi(a, p.column(i)), bj(a, p.column(j));
      const auto prod = (bi * bj).coeffs();
      const auto coords = pinv * std::span<const Rational>(prod);
      for (std::size_t k = 0; k < s; ++k) c[i][j][k] = coords[k];
    }
  return c;
}

}  // namespace

TEST_CASE("dimension of Der(A) matches the brute-force oracle") {
  for (const auto& [name, a] : standard_algebras()) {
    CAPTURE(name);
    CHECK(derivation_basis(a).size() == brute_force_der_dim(a));
  }
}

TEST_CASE("closed forms established by the oracle") {
  CHECK(brute_force_der_dim(dual_numbers()) == 1);
  CHECK(derivation_basis(dual_numbers()).size() == 1);
  for (unsigned k = 1; k <= 5; ++k) {
    CAPTURE(k);
    const auto a = truncated_polynomial_algebra(1, k);
    CHECK(brute_force_der_dim(a) == k);
    CHECK(derivation_basis(a).size() == k);
  }
  const auto xy = truncated_polynomial_algebra(2, 1);
  CHECK(brute_force_der_dim(xy) == 4);
  CHECK(derivation_basis(xy).size() == 4);
  CHECK(derivation_basis(real_numbers()).empty());
}

TEST_CASE("every solved derivation has zero Leibniz residual") {
  for (const auto& [name, a] : standard_algebras()) {
    CAPTURE(name);
    for (const auto& d : derivation_basis(a)) {
      CHECK(leibniz_residual(a, d.matrix()) == 0);
      CHECK(d(Element::unit(a)).is_zero());
    }
  }
}

TEST_CASE("the dual-number generator sends eps to -eps") {
  const auto d = dual_numbers();
  const auto basis = derivation_basis(d);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0](Element::basis(d, 1)) == -Element::basis(d, 1));
}

TEST_CASE("R[x]/(x^3) has the Euler field and x -> x^2") {
  const auto a = truncated_polynomial_algebra(1, 2);
  const auto basis = derivation_basis(a);
  REQUIRE(basis.size() == 2);
  const auto x = Element::basis(a, 1), x2 = Element::basis(a, 2);
  CHECK(basis[0](x) == x);
  CHECK(basis[0](x2) == Rational(2) * x2);
  CHECK(basis[1](x) == x2);
  CHECK(basis[1](x2).is_zero());
}

TEST_CASE("non-derivations are rejected") {
  const auto a = truncated_polynomial_algebra(1, 2);
  CHECK(kind_of([&] { from_entries(a, {{0, 0, 1}}); }) == ErrorKind::NotADerivation);
  CHECK(kind_of([&] { from_entries(a, {{1, 1, 1}}); }) == ErrorKind::NotADerivation);
  std::vector<std::vector<Rational>> rows;
  for (const auto& d : derivation_basis(a)) rows.push_back(d.flatten());
  const auto r = naive_rank(rows_to_matrix(rows, 9));
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    // A matrix is a derivation exactly when it lies in the span of the basis.
    const auto m = trial % 2 ? rng.matrix(3, 3) : (rng.rational() * derivation_basis(a)[1]).matrix();
    auto extended = rows;
    extended.push_back(m.data());
    const bool in_span = naive_rank(rows_to_matrix(extended, 9)) == r;
    CHECK((leibniz_residual(a, m) == 0) == in_span);
  }
}

TEST_CASE("dimension of Der(A) is invariant under change of basis") {
  Rng rng(41);
  for (const auto& [name, a] : standard_algebras()) {
    if (a.dim() < 2 || a.dim() > 6) continue;
    CAPTURE(name);
    for (int trial = 0; trial < 3; ++trial) {
      Matrix<Rational> p = rng.matrix(a.dim(), a.dim());
      while (naive_rank(p) < a.dim()) p = rng.matrix(a.dim(), a.dim());
      const auto b = from_structure_constants({}, change_basis(a, p));
      CHECK(b.dim() == a.dim());
      CHECK(b.height() == a.height());
      CHECK(b.width() == a.width());
      CHECK(derivation_basis(b).size() == derivation_basis(a).size());
    }
  }
}

TEST_CASE("bracket examples and laws") {
  const auto a = truncated_polynomial_algebra(1, 2);
  const auto basis = derivation_basis(a);
  const auto& euler = basis[0];
  const auto& shift = basis[1];
  CHECK(bracket(euler, shift) == shift);
  CHECK(bracket(shift, euler) == Rational(-1) * shift);
  CHECK(bracket(euler, euler).is_zero());

  const auto xy = truncated_polynomial_algebra(2, 1);
  const auto bx = derivation_basis(xy);
  for (const auto& d1 : bx)
    for (const auto& d2 : bx) {
      CHECK(bracket(d1, d2) + bracket(d2, d1) == Derivation::zero(xy));
      for (const auto& d3 : bx) {
        const auto jac = bracket(d1, bracket(d2, d3)) + bracket(d2, bracket(d3, d1)) + bracket(d3, bracket(d1, d2));
        CHECK(jac.is_zero());
      }
    }
}

TEST_CASE("module structure over A") {
  const auto d = dual_numbers();
  const auto d0 = derivation_basis(d)[0];
  CHECK(module_scale(Element::basis(d, 1), d0).is_zero());
  CHECK(module_scale(Element::unit(d), d0) == d0);

  const auto a = truncated_polynomial_algebra(1, 2);
  const auto basis = derivation_basis(a);
  CHECK(module_scale(Element::basis(a, 1), basis[0]) == basis[1]);

  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = rng.element(a);
    const auto scaled = module_scale(u, basis[0]);
    CHECK(leibniz_residual(a, scaled.matrix()) == 0);
    const auto v = rng.element(a);
    CHECK(scaled(v) == u * basis[0](v));
  }
}

TEST_CASE("exp_flow at t = 0 is the identity") {
  for (const auto& [name, a] : standard_algebras())
    for (const auto& d : derivation_basis(a))
      CHECK(max_abs_diff(exp_flow(d, 0.0).matrix(), Matrix<double>::identity(a.dim())) == 0.0);
}

TEST_CASE("exp_flow closed forms") {
  const auto d = dual_numbers();
  const auto d0 = derivation_basis(d)[0];
  for (double t : {-1.0, 0.3, std::log(2.0), 2.0}) {
    const auto phi = exp_flow(d0, t).matrix();
    CHECK(phi(0, 0) == doctest::Approx(1.0));
    CHECK(phi(1, 1) == doctest::Approx(std::exp(-t)).epsilon(1e-12));
    CHECK(phi(0, 1) == 0.0);
  }
  const auto a = truncated_polynomial_algebra(1, 2);
  const auto euler = derivation_basis(a)[0];
  const auto phi = exp_flow(euler, 0.7).matrix();
  CHECK(phi(1, 1) == doctest::Approx(std::exp(0.7)).epsilon(1e-12));
  CHECK(phi(2, 2) == doctest::Approx(std::exp(1.4)).epsilon(1e-12));
}

TEST_CASE("exp_flow of nilpotent derivations equals the finite series") {
  for (const auto& [name, a] : standard_algebras()) {
    CAPTURE(name);
    for (const auto& d : derivation_basis(a)) {
      const auto m = d.real_matrix();
      auto p = Matrix<double>::identity(a.dim());
      for (std::size_t k = 0; k < a.dim(); ++k) p = p * m;
      if (!p.is_zero()) continue;
      for (double t : {-1.5, 0.25, 3.0}) {
        const auto series = series_exp(m * t, a.dim() + 1);
        CHECK(max_abs_diff(exp_flow(d, t).matrix(), series) <= 1e-12 * (1 + std::abs(t)));
      }
    }
  }
}

TEST_CASE("exp_flow is multiplicative, a group, and has derivative D") {
  Rng rng(19);
  for (const auto& [name, a] : standard_algebras()) {
    CAPTURE(name);
    for (const auto& d : derivation_basis(a)) {
      const double t = rng.real(-2, 2), s = rng.real(-2, 2);
      const auto phi = exp_flow(d, t);
      for (int trial = 0; trial < 5; ++trial) {
        const auto u = to_real(rng.element(a)), v = to_real(rng.element(a));
        CHECK(phi.multiplicativity_residual(u, v) <= 1e-9);
      }
      const auto composed = exp_flow(d, s).matrix() * phi.matrix();
      CHECK(max_abs_diff(composed, exp_flow(d, s + t).matrix()) <= 1e-9);

      const double h = 1e-5;
      const auto diff = (exp_flow(d, h).matrix() - exp_flow(d, -h).matrix()) * (1.0 / (2 * h));
      double scale = 1;
      for (double x : d.real_matrix().data()) scale = std::max(scale, std::abs(x));
      CHECK(max_abs_diff(diff, d.real_matrix()) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("expm agrees with the Taylor series on a non-nilpotent matrix") {
  Matrix<double> m(2, 2);
  m(0, 1) = 1;
  m(1, 0) = -1;
  const auto r = expm(m * 0.5);
  CHECK(r(0, 0) == doctest::Approx(std::cos(0.5)).epsilon(1e-14));
  CHECK(r(0, 1) == doctest::Approx(std::sin(0.5)).epsilon(1e-14));
  CHECK(max_abs_diff(expm(m * 3.0), series_exp(m * 3.0, 60)) <= 1e-12);
}

TEST_CASE("Lie structure constants") {
  const auto a = truncated_polynomial_algebra(1, 2);
  const auto lie = lie_structure(derivation_basis(a));
  CHECK(lie.dim() == 2);
  CHECK(lie.constant(0, 1, 0) == 0);
  CHECK(lie.constant(0, 1, 1) == 1);
  CHECK(lie.constant(1, 0, 1) == -1);
  CHECK_FALSE(lie.is_abelian());
  CHECK(lie.antisymmetry_residual() == 0);
  CHECK(lie.jacobi_residual() == 0);

  for (const auto& [name, b] : standard_algebras()) {
    CAPTURE(name);
    const auto l = lie_structure(derivation_basis(b));
    CHECK(l.jacobi_residual() == 0);
    CHECK(l.antisymmetry_residual() == 0);
  }
  CHECK(lie_structure(derivation_basis(dual_numbers())).is_abelian());
}

TEST_CASE("a subset that does not close is rejected") {
  const auto xy = truncated_polynomial_algebra(2, 1);
  // y -> x and x -> y bracket to a diagonal derivation outside their span.
  const auto e12 = from_entries(xy, {{1, 2, 1}});
  const auto e21 = from_entries(xy, {{2, 1, 1}});
  CHECK(kind_of([&] { lie_structure({e12, e21}); }) == ErrorKind::NotClosed);
  CHECK(kind_of([&] { lie_structure({e12, e12}); }) == ErrorKind::NotClosed);
  CHECK(lie_structure({e12}).is_abelian());
}

TEST_CASE("Jacobi residual detects a non-Lie bracket table") {
  const auto xy = truncated_polynomial_algebra(2, 1);
  const auto b = derivation_basis(xy);
  // [e0, e1] = e0 and [e0, e2] = e1 break the Jacobi identity on (0, 1, 2).
  std::vector<Rational> c(27, q(0));
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, long v) {
    c[(i * 3 + j) * 3 + k] = v;
    c[(j * 3 + i) * 3 + k] = -v;
  };
  set(0, 1, 0, 1);
  set(0, 2, 1, 1);
  const LieStructure fake({b[0], b[1], b[2]}, c);
  CHECK(fake.antisymmetry_residual() == 0);
  CHECK(fake.jacobi_residual() == 1);
}
