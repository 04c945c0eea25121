#include "weil/poly.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "weil/error.hpp"

namespace weil {

Monomial Monomial::variable(std::size_t num_vars, std::size_t i, unsigned power) {
  Monomial m = one(num_vars);
  m.exponents.at(i) = power;
  return m;
}

unsigned Monomial::degree() const noexcept {
  return std::accumulate(exponents.begin(), exponents.end(), 0u);
}

bool Monomial::divides(const Monomial& other) const {
  if (other.num_vars() != num_vars()) return false;
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (exponents[i] > other.exponents[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.num_vars() != b.num_vars())
    throw Error(ErrorKind::ArityMismatch, "monomials over different variable counts");
  Monomial m = a;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) m.exponents[i] += b.exponents[i];
  return m;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exponents < b.exponents;
}

bool BasisOrderLess::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exponents > b.exponents;
}

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
  Polynomial p(num_vars);
  p.add_term(Monomial::one(num_vars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t i) {
  if (i >= num_vars) throw Error(ErrorKind::IndexOutOfRange, "variable index " + std::to_string(i));
  Polynomial p(num_vars);
  p.add_term(Monomial::variable(num_vars, i), Rational(1));
  return p;
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.num_vars());
  p.add_term(m, c);
  return p;
}

int Polynomial::degree() const noexcept {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.degree());
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.num_vars() != num_vars_)
    throw Error(ErrorKind::ArityMismatch, "monomial has " + std::to_string(m.num_vars()) +
                                              " variables, polynomial has " + std::to_string(num_vars_));
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void Polynomial::check_same_ring(const Polynomial& o) const {
  if (o.num_vars_ != num_vars_)
    throw Error(ErrorKind::ArityMismatch, "polynomials over " + std::to_string(num_vars_) + " and " +
                                              std::to_string(o.num_vars_) + " variables");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_ring(b);
  Polynomial out(a.num_vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(num_vars_, Rational(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::partial(std::size_t var) const {
  if (var >= num_vars_)
    throw Error(ErrorKind::IndexOutOfRange,
                "partial in variable " + std::to_string(var) + " of " + std::to_string(num_vars_));
  Polynomial out(num_vars_);
  for (const auto& [m, c] : terms_) {
    const unsigned e = m.exponents[var];
    if (e == 0) continue;
    Monomial d = m;
    d.exponents[var] = e - 1;
    out.add_term(d, c * e);
  }
  return out;
}

namespace {

template <class T>
T evaluate_terms(const Polynomial::Terms& terms, std::span<const T> point, std::size_t num_vars) {
  if (point.size() != num_vars)
    throw Error(ErrorKind::ArityMismatch, "expected " + std::to_string(num_vars) + " arguments, got " +
                                              std::to_string(point.size()));
  T sum(0);
  for (const auto& [m, c] : terms) {
    T t;
    if constexpr (std::is_same_v<T, double>) t = c.get_d();
    else t = c;
    for (std::size_t i = 0; i < num_vars; ++i)
      for (unsigned e = 0; e < m.exponents[i]; ++e) t *= point[i];
    sum += t;
  }
  return sum;
}

}  // namespace

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  return evaluate_terms<Rational>(terms_, point, num_vars_);
}

double Polynomial::evaluate(std::span<const double> point) const {
  return evaluate_terms<double>(terms_, point, num_vars_);
}

Polynomial Polynomial::compose(std::span<const Polynomial> images) const {
  if (images.size() != num_vars_)
    throw Error(ErrorKind::ArityMismatch, "compose expects " + std::to_string(num_vars_) + " images");
  if (images.empty()) return *this;
  const std::size_t target = images.front().num_vars();
  Polynomial out(target);
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(target, c);
    for (std::size_t i = 0; i < num_vars_; ++i)
      if (m.exponents[i] > 0) t = t * images[i].pow(m.exponents[i]);
    out += t;
  }
  return out;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool is_constant = m.degree() == 0;
    bool need_star = false;
    if (is_constant || mag != 1) {
      os << weil::to_string(mag);
      need_star = true;
    }
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
      const unsigned e = m.exponents[i];
      if (e == 0) continue;
      if (need_star) os << "*";
      os << names[i];
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

std::string Polynomial::to_string() const {
  const auto names = default_variable_names(num_vars_);
  return to_string(names);
}

std::vector<std::string> default_variable_names(std::size_t num_vars) {
  std::vector<std::string> names;
  names.reserve(num_vars);
  for (std::size_t i = 0; i < num_vars; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

namespace {

// Recursive-descent parser:
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | '+' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer ('/' integer)? | name | '(' expr ')'
class PolyParser {
 public:
  PolyParser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    while (true) {
      if (accept('+')) p += term();
      else if (accept('-')) p -= term();
      else return p;
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    while (accept('*')) p = p * unary();
    return p;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      Integer e = integer();
      if (!e.fits_uint_p() || e > 4096) {
        pos_ = start;
        fail("exponent too large");
      }
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(integer());
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        const std::size_t den_pos = pos_;
        Integer den = integer();
        if (den == 0) {
          pos_ = den_pos;
          fail("zero denominator");
        }
        value /= Rational(den);
      }
      return Polynomial::constant(names_.size(), value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80 || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size()) {
        const unsigned char ch = static_cast<unsigned char>(text_[pos_]);
        if (std::isalnum(ch) || ch == '_' || ch >= 0x80) ++pos_;
        else break;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return Polynomial::variable(names_.size(), i);
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
  return PolyParser(text, names).parse();
}

Polynomial parse_polynomial(std::string_view text, std::size_t num_vars) {
  const auto names = default_variable_names(num_vars);
  return parse_polynomial(text, names);
}

}  // namespace weil
