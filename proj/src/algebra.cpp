#include "weil/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "weil/linalg.hpp"

namespace weil {

struct WeilAlgebra::Data {
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<Rational> table;                    // c[(i*dim + j)*dim + k]
  std::vector<std::vector<ProductTerm>> products;  // nonzero entries per (i, j)
  std::vector<std::size_t> filtration;             // dim m^p, p = 0..height+1
  unsigned height = 0;
  std::size_t width = 0;
};

std::size_t WeilAlgebra::dim() const noexcept { return data_->dim; }
const std::vector<std::string>& WeilAlgebra::labels() const noexcept { return data_->labels; }

const Rational& WeilAlgebra::constant(std::size_t i, std::size_t j, std::size_t k) const {
  const std::size_t s = data_->dim;
  return data_->table.at((i * s + j) * s + k);
}

std::span<const ProductTerm> WeilAlgebra::product(std::size_t i, std::size_t j) const {
  return data_->products.at(i * data_->dim + j);
}

StructureTable WeilAlgebra::table() const {
  const std::size_t s = dim();
  StructureTable c(s, std::vector<std::vector<Rational>>(s, std::vector<Rational>(s)));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < s; ++k) c[i][j][k] = constant(i, j, k);
  return c;
}

unsigned WeilAlgebra::height() const noexcept { return data_->height; }
std::size_t WeilAlgebra::width() const noexcept { return data_->width; }
const std::vector<std::size_t>& WeilAlgebra::filtration_dims() const noexcept { return data_->filtration; }

bool operator==(const WeilAlgebra& a, const WeilAlgebra& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->dim == b.data_->dim && a.data_->table == b.data_->table;
}

namespace {

using Vec = std::vector<Rational>;

// Nonzero structure constants of each product a_i * a_j.
class SparseTable {
 public:
  explicit SparseTable(const StructureTable& c) : s_(c.size()), terms_(s_ * s_) {
    for (std::size_t i = 0; i < s_; ++i)
      for (std::size_t j = 0; j < s_; ++j)
        for (std::size_t k = 0; k < s_; ++k)
          if (c[i][j][k] != 0) terms_[i * s_ + j].emplace_back(k, c[i][j][k]);
  }
  std::size_t dim() const noexcept { return s_; }
  const std::vector<std::pair<std::size_t, Rational>>& operator()(std::size_t i, std::size_t j) const {
    return terms_[i * s_ + j];
  }

 private:
  std::size_t s_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> terms_;
};

// Product of two coordinate vectors through a raw (unnormalized) table.
Vec multiply(const SparseTable& c, const Vec& u, const Vec& v) {
  const std::size_t s = c.dim();
  Vec out(s, Rational(0));
  for (std::size_t i = 0; i < s; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < s; ++j) {
      if (v[j] == 0 || c(i, j).empty()) continue;
      const Rational uv = u[i] * v[j];
      for (const auto& [k, x] : c(i, j)) out[k] += uv * x;
    }
  }
  return out;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

Vec unit_vector(std::size_t s, std::size_t i) {
  Vec v(s, Rational(0));
  v[i] = 1;
  return v;
}

std::string combination_label(const Vec& v, const std::vector<std::string>& labels) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const Rational mag = abs(v[i]);
    if (first) {
      if (v[i] < 0) os << "-";
    } else {
      os << (v[i] < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1) os << to_string(mag) << "·";
    os << labels[i];
  }
  return first ? "0" : os.str();
}

void check_shape(const std::vector<std::string>& labels, const StructureTable& c) {
  const std::size_t s = c.size();
  if (s == 0) throw Error(ErrorKind::MalformedTable, "empty structure table");
  for (const auto& row : c) {
    if (row.size() != s) throw Error(ErrorKind::MalformedTable, "structure table is not s x s x s");
    for (const auto& entry : row)
      if (entry.size() != s) throw Error(ErrorKind::MalformedTable, "structure table is not s x s x s");
  }
  if (labels.size() != s)
    throw Error(ErrorKind::MalformedTable,
                std::to_string(labels.size()) + " labels for dimension " + std::to_string(s));
}

void check_commutative(const StructureTable& c) {
  const std::size_t s = c.size();
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j)
      for (std::size_t k = 0; k < s; ++k)
        if (c[i][j][k] != c[j][i][k])
          throw Error(ErrorKind::NotCommutative, "a" + std::to_string(i) + "*a" + std::to_string(j) +
                                                     " != a" + std::to_string(j) + "*a" + std::to_string(i));
}

void check_associative(const SparseTable& c) {
  const std::size_t s = c.dim();
  Vec left(s), right(s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t l = 0; l < s; ++l) {
        std::fill(left.begin(), left.end(), Rational(0));
        std::fill(right.begin(), right.end(), Rational(0));
        for (const auto& [m, x] : c(i, j))
          for (const auto& [k, y] : c(m, l)) left[k] += x * y;
        for (const auto& [m, x] : c(j, l))
          for (const auto& [k, y] : c(i, m)) right[k] += x * y;
        if (left != right)
          throw Error(ErrorKind::NotAssociative, "(a" + std::to_string(i) + "*a" + std::to_string(j) + ")*a" +
                                                     std::to_string(l) + " differs from a" + std::to_string(i) +
                                                     "*(a" + std::to_string(j) + "*a" + std::to_string(l) + ")");
      }
}

// Solves u.a_i = a_i for all i: sum_j u_j c[j][i][k] = delta_ik.
Vec find_unit(const StructureTable& c) {
  const std::size_t s = c.size();
  Matrix<Rational> sys(s * s, s);
  Vec rhs(s * s, Rational(0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < s; ++k) {
      for (std::size_t j = 0; j < s; ++j) sys(i * s + k, j) = c[j][i][k];
      rhs[i * s + k] = (i == k) ? 1 : 0;
    }
  auto u = solve(sys, rhs);
  if (!u) throw Error(ErrorKind::NoUnit, "no element u with u*a_i = a_i for every basis element");
  return *u;
}

Matrix<Rational> left_multiplication(const SparseTable& c, const Vec& a) {
  const std::size_t s = c.dim();
  Matrix<Rational> m(s, s);
  for (std::size_t j = 0; j < s; ++j) {
    const Vec col = multiply(c, a, unit_vector(s, j));
    for (std::size_t k = 0; k < s; ++k) m(k, j) = col[k];
  }
  return m;
}

// Nilradical of a commutative algebra over a field of characteristic zero:
// the radical of the trace form (a, b) -> tr(L_{ab}). The candidate is then
// checked constructively: it must be an ideal whose elements have
// nilpotent multiplication operators.
std::vector<Vec> nilradical(const StructureTable& c) {
  const std::size_t s = c.size();
  Vec trace(s, Rational(0));
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t l = 0; l < s; ++l) trace[k] += c[k][l][l];
  Matrix<Rational> gram(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      Rational t = 0;
      for (std::size_t k = 0; k < s; ++k) t += c[i][j][k] * trace[k];
      gram(i, j) = t;
    }
  return nullspace(gram);
}

void check_nilpotent_ideal(const SparseTable& c, const std::vector<Vec>& basis) {
  const std::size_t s = c.dim();
  const Echelon span = row_reduce(rows_to_matrix(basis, s));
  // v lies in the span iff it vanishes after clearing the pivot columns.
  auto in_span = [&](Vec v) {
    for (std::size_t r = 0; r < span.rank(); ++r) {
      const Rational f = v[span.pivots[r]];
      if (f == 0) continue;
      for (std::size_t k = 0; k < s; ++k) v[k] -= f * span.reduced(r, k);
    }
    return is_zero_vec(v);
  };
  for (const Vec& n : basis) {
    const Matrix<Rational> l = left_multiplication(c, n);
    Matrix<Rational> p = l;
    for (std::size_t e = 1; e < s; e *= 2) p = p * p;
    if (!p.is_zero()) throw Error(ErrorKind::NotNilpotent, "nilpotent candidate has non-nilpotent multiplication");
    for (std::size_t j = 0; j < s; ++j)
      if (!in_span(l.column(j))) throw Error(ErrorKind::NotLocal, "nilpotent elements do not form an ideal");
  }
}

// Assumes a normalized table; fills filtration, height and width.
void compute_filtration(WeilAlgebra::Data& d, const SparseTable& c) {
  const std::size_t s = d.dim;
  d.filtration = {s};
  std::vector<Vec> m;
  for (std::size_t i = 1; i < s; ++i) m.push_back(unit_vector(s, i));
  std::vector<Vec> power = m;
  unsigned p = 1;
  d.filtration.push_back(power.size());
  while (!power.empty()) {
    std::vector<Vec> products;
    for (const Vec& u : power)
      for (const Vec& v : m) {
        Vec w = multiply(c, u, v);
        if (!is_zero_vec(w)) products.push_back(std::move(w));
      }
    std::vector<Vec> next;
    if (!products.empty()) {
      const Echelon e = row_reduce(rows_to_matrix(products, s));
      for (std::size_t i = 0; i < e.rank(); ++i) {
        Vec row(e.reduced.row(i).begin(), e.reduced.row(i).end());
        next.push_back(std::move(row));
      }
    }
    if (next.size() >= power.size() && !next.empty())
      throw Error(ErrorKind::NotNilpotent, "powers of the maximal ideal do not decrease");
    power = std::move(next);
    d.filtration.push_back(power.size());
    if (!power.empty()) ++p;
  }
  d.height = s == 1 ? 0 : p;
  d.width = (s - 1) - (d.filtration.size() > 2 ? d.filtration[2] : 0);
}

}  // namespace

WeilAlgebra make_verified_algebra(std::vector<std::string> labels, StructureTable c) {
  const std::size_t s = c.size();
  auto d = std::make_shared<WeilAlgebra::Data>();
  d->dim = s;
  d->labels = std::move(labels);
  d->table.reserve(s * s * s);
  d->products.resize(s * s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < s; ++k) {
        d->table.push_back(c[i][j][k]);
        if (c[i][j][k] != 0) d->products[i * s + j].push_back({k, c[i][j][k], c[i][j][k].get_d()});
      }
  compute_filtration(*d, SparseTable(c));
  return WeilAlgebra(std::move(d));
}

WeilAlgebra from_structure_constants(std::vector<std::string> labels, const StructureTable& c) {
  if (labels.empty())
    for (std::size_t i = 0; i < c.size(); ++i) labels.push_back("e" + std::to_string(i));
  check_shape(labels, c);
  check_commutative(c);
  const SparseTable sparse(c);
  check_associative(sparse);
  const std::size_t s = c.size();
  const Vec unit = find_unit(c);

  const std::vector<Vec> nil = nilradical(c);
  if (nil.size() + 1 != s)
    throw Error(ErrorKind::NotLocal, "nilpotent elements span a subspace of codimension " +
                                         std::to_string(s - nil.size()) + ", expected 1");
  check_nilpotent_ideal(sparse, nil);

  // New basis: unit, then the nilradical basis. Columns of `change` hold
  // the new basis vectors in old coordinates.
  std::vector<Vec> basis{unit};
  basis.insert(basis.end(), nil.begin(), nil.end());
  Matrix<Rational> change(s, s);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < s; ++i) change(i, j) = basis[j][i];
  const auto back = inverse(change);
  if (!back) throw Error(ErrorKind::NotLocal, "unit lies in the nilradical");

  StructureTable normalized(s, std::vector<Vec>(s, Vec(s, Rational(0))));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j) {
      const Vec prod = multiply(sparse, basis[i], basis[j]);
      const Vec coords = (*back) * std::span<const Rational>(prod);
      normalized[i][j] = coords;
      normalized[j][i] = coords;
    }

  std::vector<std::string> new_labels;
  for (const Vec& b : basis) {
    std::size_t nonzero = 0, where = 0;
    for (std::size_t i = 0; i < s; ++i)
      if (b[i] != 0) {
        ++nonzero;
        where = i;
      }
    new_labels.push_back(nonzero == 1 && b[where] == 1 ? labels[where] : combination_label(b, labels));
  }
  return make_verified_algebra(std::move(new_labels), std::move(normalized));
}

std::vector<std::string> default_algebra_variables(std::size_t s_vars) {
  if (s_vars == 1) return {"x"};
  if (s_vars == 2) return {"x", "y"};
  if (s_vars == 3) return {"x", "y", "z"};
  return default_variable_names(s_vars);
}

namespace {

std::string monomial_label(const Monomial& m, const std::vector<std::string>& vars) {
  if (m.degree() == 0) return "1";
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const unsigned e = m.exponents[i];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

// Algebra spanned by `basis` (sorted, starting with 1) where a product is
// zero exactly when it is divisible by a relation.
WeilAlgebra monomial_algebra(const std::vector<std::string>& vars, const std::vector<Monomial>& basis,
                             const std::vector<Monomial>& relations) {
  const std::size_t s = basis.size();
  std::map<Monomial, std::size_t, GrlexLess> index;
  for (std::size_t i = 0; i < s; ++i) index.emplace(basis[i], i);
  StructureTable c(s, std::vector<Vec>(s, Vec(s, Rational(0))));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      const Monomial prod = basis[i] * basis[j];
      const bool killed =
          std::any_of(relations.begin(), relations.end(), [&](const Monomial& r) { return r.divides(prod); });
      if (killed) continue;
      auto it = index.find(prod);
      if (it == index.end()) throw Error(ErrorKind::MalformedTable, "standard monomials not closed under product");
      c[i][j][it->second] = 1;
    }
  std::vector<std::string> labels;
  for (const auto& m : basis) labels.push_back(monomial_label(m, vars));
  // The table is normalized by construction; run the axiom checks anyway.
  check_commutative(c);
  check_associative(SparseTable(c));
  return make_verified_algebra(std::move(labels), std::move(c));
}

}  // namespace

WeilAlgebra truncated_polynomial_algebra(std::size_t s_vars, unsigned k, std::vector<std::string> names) {
  if (s_vars == 0) throw Error(ErrorKind::MalformedTable, "truncated polynomial algebra needs at least one variable");
  if (names.empty()) names = default_algebra_variables(s_vars);
  if (names.size() != s_vars) throw Error(ErrorKind::MalformedTable, "variable name count mismatch");

  std::vector<Monomial> basis;
  std::vector<unsigned> e(s_vars, 0);
  // Enumerate exponent vectors with total degree <= k.
  auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var == s_vars) {
      basis.emplace_back(e);
      return;
    }
    for (unsigned p = 0; p <= remaining; ++p) {
      e[var] = p;
      self(self, var + 1, remaining - p);
    }
    e[var] = 0;
  };
  rec(rec, 0, k);
  std::sort(basis.begin(), basis.end(), BasisOrderLess{});

  std::vector<Monomial> relations;
  std::vector<unsigned> top(s_vars, 0);
  auto gen = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var + 1 == s_vars) {
      top[var] = remaining;
      relations.emplace_back(top);
      return;
    }
    for (unsigned p = 0; p <= remaining; ++p) {
      top[var] = p;
      self(self, var + 1, remaining - p);
    }
    top[var] = 0;
  };
  gen(gen, 0, k + 1);
  return monomial_algebra(names, basis, relations);
}

WeilAlgebra monomial_quotient_algebra(std::vector<std::string> vars, const std::vector<Monomial>& relations) {
  const std::size_t n = vars.size();
  if (n == 0) throw Error(ErrorKind::MalformedTable, "monomial quotient needs at least one variable");
  for (const auto& r : relations) {
    if (r.num_vars() != n) throw Error(ErrorKind::ArityMismatch, "relation over the wrong number of variables");
    if (r.degree() == 0) throw Error(ErrorKind::NotLocal, "relation 1 makes the quotient the zero ring");
  }
  std::vector<unsigned> bound(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    unsigned best = 0;
    for (const auto& r : relations) {
      const bool pure = r.exponents[i] > 0 && r.degree() == r.exponents[i];
      if (pure && (best == 0 || r.exponents[i] < best)) best = r.exponents[i];
    }
    if (best == 0)
      throw Error(ErrorKind::InfiniteDimensional, "no pure power of variable '" + vars[i] + "' among the relations");
    bound[i] = best;
  }
  std::vector<Monomial> basis;
  std::vector<unsigned> e(n, 0);
  auto rec = [&](auto&& self, std::size_t var) -> void {
    if (var == n) {
      Monomial m(e);
      if (std::none_of(relations.begin(), relations.end(), [&](const Monomial& r) { return r.divides(m); }))
        basis.push_back(std::move(m));
      return;
    }
    for (unsigned p = 0; p < bound[var]; ++p) {
      e[var] = p;
      self(self, var + 1);
    }
    e[var] = 0;
  };
  rec(rec, 0);
  std::sort(basis.begin(), basis.end(), BasisOrderLess{});
  return monomial_algebra(vars, basis, relations);
}

WeilAlgebra dual_numbers() {
  return monomial_quotient_algebra({"ε"}, {Monomial::variable(1, 0, 2)});
}

WeilAlgebra real_numbers() { return make_verified_algebra({"1"}, StructureTable{{{Rational(1)}}}); }

// ---------------------------------------------------------------------------

RealElement to_real(const Element& u) {
  std::vector<double> c;
  c.reserve(u.dim());
  for (const auto& q : u.coeffs()) c.push_back(q.get_d());
  return RealElement(u.algebra(), std::move(c));
}

template <class T>
static Matrix<T> multiplication_operator_impl(const BasicElement<T>& a) {
  const std::size_t s = a.dim();
  Matrix<T> m(s, s);
  for (std::size_t j = 0; j < s; ++j) {
    const auto col = a * BasicElement<T>::basis(a.algebra(), j);
    for (std::size_t k = 0; k < s; ++k) m(k, j) = col[k];
  }
  return m;
}

Matrix<Rational> multiplication_operator(const Element& a) { return multiplication_operator_impl(a); }
Matrix<double> multiplication_operator(const RealElement& a) { return multiplication_operator_impl(a); }

namespace {

template <class T, class Fmt>
std::string element_string(const BasicElement<T>& u, Fmt&& fmt_coeff) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    const T& c = u[i];
    if (c == T(0)) continue;
    const bool negative = c < T(0);
    const T mag = negative ? T(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << fmt_coeff(mag);
    } else {
      if (mag != T(1)) os << fmt_coeff(mag) << "·";
      os << u.algebra().label(i);
    }
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string to_string(const Element& u) {
  return element_string(u, [](const Rational& q) { return to_string(q); });
}

std::string to_string(const RealElement& u) {
  return element_string(u, [](double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
  });
}

std::string to_string(const PolyElement& u, std::span<const std::string> chart_names) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    const Polynomial& p = u[i];
    if (p.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool single = p.terms().size() == 1;
    const std::string body = p.to_string(chart_names);
    if (i == 0) {
      os << (single ? body : "(" + body + ")");
    } else {
      os << u.algebra().label(i) << "·" << (single && body.front() != '-' ? body : "(" + body + ")");
    }
  }
  return first ? "0" : os.str();
}

}  // namespace weil
