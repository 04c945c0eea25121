#pragma once

// Test-only oracles and random generators. Nothing here calls the
// fraction-free eliminator or the Leibniz solver, so results computed with
// these helpers are independent checks on those code paths.

#include <cmath>
#include <random>
#include <vector>

#include "weil/algebra.hpp"
#include "weil/matrix.hpp"
#include "weil/nearpoints.hpp"
#include "weil/poly.hpp"

namespace weil::testing {

/// num/den in canonical form (GMP arithmetic requires it).
inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Rank by textbook rational Gauss-Jordan elimination (divides as it goes).
inline std::size_t naive_rank(Matrix<Rational> m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(r, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// dim Der(A) by brute force: the Leibniz defect is linear in D, so stack
/// the defects of the s^2 elementary matrices E_kl as columns and take the
/// nullity with the naive eliminator.
inline std::size_t brute_force_der_dim(const WeilAlgebra& a) {
  const std::size_t s = a.dim();
  Matrix<Rational> defects(s * s * s, s * s);
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t l = 0; l < s; ++l) {
      // E_kl sends a_l to a_k and kills the other basis elements.
      auto apply = [&](const Element& u) {
        Element out = Element::zero(a);
        out[k] = u[l];
        return out;
      };
      std::size_t row = 0;
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
          const Element ai = Element::basis(a, i), aj = Element::basis(a, j);
          const Element defect = apply(ai * aj) - apply(ai) * aj - ai * apply(aj);
          for (std::size_t c = 0; c < s; ++c) defects(row * s + c, k * s + l) = defect[c];
          ++row;
        }
    }
  return s * s - naive_rank(defects);
}

/// Nontrivial idempotents u = u^2 (u != 0, 1) on a grid of rational
/// coordinates with step 1/2 in [-2, 2]^s, using the raw table.
inline std::vector<std::vector<Rational>> grid_idempotents(const StructureTable& c) {
  const std::size_t s = c.size();
  std::vector<Rational> grid;
  for (int k = -4; k <= 4; ++k) grid.push_back(q(k, 2));
  std::vector<std::vector<Rational>> found;
  std::vector<std::size_t> idx(s, 0);
  while (true) {
    std::vector<Rational> u(s);
    for (std::size_t i = 0; i < s; ++i) u[i] = grid[idx[i]];
    std::vector<Rational> sq(s, Rational(0));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j)
        for (std::size_t k = 0; k < s; ++k) sq[k] += u[i] * u[j] * c[i][j][k];
    bool zero = true;
    for (const auto& q : u) zero = zero && q == 0;
    if (sq == u && !zero) found.push_back(u);
    std::size_t pos = 0;
    while (pos < s && ++idx[pos] == grid.size()) idx[pos++] = 0;
    if (pos == s) break;
  }
  return found;
}

/// Count of monomials with every exponent below `cap` that no relation divides.
inline std::size_t count_standard_monomials(std::size_t vars, const std::vector<Monomial>& relations, unsigned cap) {
  std::size_t count = 0;
  std::vector<unsigned> e(vars, 0);
  while (true) {
    Monomial m(e);
    bool divisible = false;
    for (const auto& r : relations) divisible = divisible || r.divides(m);
    if (!divisible) ++count;
    std::size_t pos = 0;
    while (pos < vars && ++e[pos] == cap) e[pos++] = 0;
    if (pos == vars) break;
  }
  return count;
}

inline unsigned long binomial(unsigned n, unsigned k) {
  unsigned long r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Sum_{k < terms} (tD)^k / k!, exact for nilpotent D once terms >= size.
inline Matrix<double> series_exp(const Matrix<double>& m, std::size_t terms) {
  const std::size_t n = m.rows();
  Matrix<double> sum = Matrix<double>::identity(n), term = Matrix<double>::identity(n);
  for (std::size_t k = 1; k < terms; ++k) {
    term = term * m * (1.0 / static_cast<double>(k));
    sum += term;
  }
  return sum;
}

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  Rational rational(int range = 5, int max_den = 4) {
    return q(integer(-range, range), integer(1, max_den));
  }

  Element element(const WeilAlgebra& a) {
    Element u = Element::zero(a);
    for (std::size_t i = 0; i < a.dim(); ++i) u[i] = rational();
    return u;
  }

  Element nilpotent(const WeilAlgebra& a) { return element(a).nilpotent_part(); }

  NearPoint near_point(const WeilAlgebra& a, std::size_t n) {
    std::vector<Rational> base;
    std::vector<Element> nil;
    for (std::size_t i = 0; i < n; ++i) {
      base.push_back(rational());
      nil.push_back(nilpotent(a));
    }
    return make_near_point(a, base, nil);
  }

  Polynomial polynomial(std::size_t vars, unsigned max_degree, int terms) {
    Polynomial p(vars);
    for (int t = 0; t < terms; ++t) {
      std::vector<unsigned> e(vars, 0);
      unsigned budget = static_cast<unsigned>(integer(0, static_cast<int>(max_degree)));
      for (unsigned b = 0; b < budget; ++b) ++e[static_cast<std::size_t>(integer(0, static_cast<int>(vars) - 1))];
      p.add_term(Monomial(e), rational());
    }
    return p;
  }

  Matrix<Rational> matrix(std::size_t rows, std::size_t cols, int range = 3) {
    Matrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rational(range, 3);
    return m;
  }

 private:
  std::mt19937 gen_;
};

/// The standard test algebras: D, R[x]/(x^{k+1}) for k = 1..5,
/// R[x,y]/(x,y)^{k+1} for k = 1..3, and R.
inline std::vector<std::pair<std::string, WeilAlgebra>> standard_algebras() {
  std::vector<std::pair<std::string, WeilAlgebra>> out;
  out.emplace_back("D", dual_numbers());
  for (unsigned k = 1; k <= 5; ++k)
    out.emplace_back("R[x]/(x^" + std::to_string(k + 1) + ")", truncated_polynomial_algebra(1, k));
  for (unsigned k = 1; k <= 3; ++k)
    out.emplace_back("R[x,y]/(x,y)^" + std::to_string(k + 1), truncated_polynomial_algebra(2, k));
  out.emplace_back("R", real_numbers());
  return out;
}

}  // namespace weil::testing
