#include <doctest.h>

#include "support.hpp"
#include "weil/poly.hpp"

using namespace weil;
using weil::testing::Rng;

namespace {

Polynomial P(std::string_view text, std::size_t n = 2) { return parse_polynomial(text, n); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::NotADerivation;
}

}  // namespace

TEST_CASE("multiplication examples") {
  CHECK(P("x1") * P("x1") == P("x1^2"));
  CHECK(P("1 + x1") * P("1 - x1") == P("1 - x1^2"));
  CHECK(P("x1 + x2").pow(2) == P("x1^2 + 2*x1*x2 + x2^2"));
  CHECK((P("x1") - P("x1")).is_zero());
  CHECK(P("0").degree() == -1);
  CHECK(P("3*x1^2*x2 + x2").degree() == 3);
}

TEST_CASE("arity mismatch is rejected") {
  CHECK(kind_of([] { return P("x1", 1) * P("x1", 2); }) == ErrorKind::ArityMismatch);
  CHECK(kind_of([] { return P("x1", 1) + P("x1", 2); }) == ErrorKind::ArityMismatch);
  CHECK(kind_of([] { return Monomial::one(1) * Monomial::one(2); }) == ErrorKind::ArityMismatch);
}

TEST_CASE("partial derivative examples") {
  CHECK(P("x1^2*x2").partial(0) == P("2*x1*x2"));
  CHECK(P("3*x1^3", 1).partial(0) == P("9*x1^2", 1));
  CHECK(P("7").partial(1).is_zero());
  CHECK(kind_of([] { return P("x1").partial(2); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([] { return Polynomial::variable(2, 5); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("partials commute and satisfy the product rule") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = rng.polynomial(3, 5, 6);
    const auto g = rng.polynomial(3, 4, 4);
    CHECK(f.partial(0).partial(2) == f.partial(2).partial(0));
    CHECK((f * g).partial(1) == f.partial(1) * g + f * g.partial(1));
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = rng.polynomial(2, 4, 5);
    const auto g = rng.polynomial(2, 4, 5);
    const std::vector<Rational> p{rng.rational(), rng.rational()};
    CHECK((f * g).evaluate(std::span<const Rational>(p)) ==
          f.evaluate(std::span<const Rational>(p)) * g.evaluate(std::span<const Rational>(p)));
    CHECK((f + g).evaluate(std::span<const Rational>(p)) ==
          f.evaluate(std::span<const Rational>(p)) + g.evaluate(std::span<const Rational>(p)));
  }
  const std::vector<double> p{0.5, -2.0};
  CHECK(P("x1^2*x2 - 3/2*x1").evaluate(std::span<const double>(p)) == doctest::Approx(-0.5 - 0.75));
}

TEST_CASE("composition substitutes polynomials") {
  const std::vector<Polynomial> images{P("x1 + x2"), P("x1*x2")};
  CHECK(P("x1^2 - x2").compose(images) == P("x1^2 + x1*x2 + x2^2"));
}

TEST_CASE("printing") {
  CHECK(P("x1^2*x2 - 3/2*x1").to_string() == "x1^2*x2 - 3/2*x1");
  CHECK(P("0").to_string() == "0");
  const std::vector<std::string> names{"x", "y"};
  CHECK(parse_polynomial("y*x - 1", names).to_string(names) == "x*y - 1");
}

TEST_CASE("parser round trip on random polynomials") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = rng.polynomial(3, 4, 5);
    CHECK(parse_polynomial(f.to_string(), 3) == f);
  }
}

TEST_CASE("parser accepts parentheses, fractions and unicode names") {
  const std::vector<std::string> names{"ε"};
  CHECK(parse_polynomial("(ε + 1)^2", names) == parse_polynomial("ε^2 + 2*ε + 1", names));
  CHECK(P("-(x1 - 2/4)") == P("1/2 - x1"));
}

TEST_CASE("parser errors report a position") {
  auto position = [](std::string_view text) -> std::size_t {
    try {
      parse_polynomial(text, 2);
    } catch (const ParseError& e) {
      return e.position();
    }
    FAIL("no parse error for " << text);
    return 0;
  };
  CHECK(position("x1 +") == 4);
  CHECK(position("x1 * z") == 5);
  CHECK(position("(x1") == 3);
  CHECK(position("x1 ^ y") == 5);
  CHECK(position("1/0") == 2);
}

TEST_CASE("monomial order lists the basis by degree") {
  std::vector<Monomial> ms{Monomial({0, 2}), Monomial({1, 0}), Monomial({0, 0}), Monomial({1, 1}), Monomial({0, 1}),
                           Monomial({2, 0})};
  std::sort(ms.begin(), ms.end(), BasisOrderLess{});
  const std::vector<Monomial> expected{Monomial({0, 0}), Monomial({1, 0}), Monomial({0, 1}),
                                       Monomial({2, 0}), Monomial({1, 1}), Monomial({0, 2})};
  CHECK(ms == expected);
  CHECK(Monomial({1, 0}).divides(Monomial({2, 1})));
  CHECK_FALSE(Monomial({0, 2}).divides(Monomial({2, 1})));
}
