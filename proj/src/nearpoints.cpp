#include "weil/nearpoints.hpp"

#include <cmath>
#include <sstream>

namespace weil {

std::vector<std::string> chart_variable_names(const WeilAlgebra& a, std::size_t n) {
  const std::size_t s = a.dim();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      const std::string idx = std::to_string(i + 1);
      if (s == 2) names.push_back((j == 0 ? "x" : "y") + idx);
      else if (s == 1) names.push_back("x" + idx);
      else names.push_back("x" + idx + "_" + std::to_string(j));
    }
  return names;
}

RealNearPoint to_real(const NearPoint& xi) {
  std::vector<RealElement> comps;
  for (const auto& c : xi.components()) comps.push_back(to_real(c));
  return RealNearPoint(xi.algebra(), std::move(comps));
}

namespace {

// All exponent vectors of length n with total degree <= order.
std::vector<std::vector<unsigned>> multi_indices(std::size_t n, unsigned order) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> e(n, 0);
  auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var == n) {
      out.push_back(e);
      return;
    }
    for (unsigned p = 0; p <= remaining; ++p) {
      e[var] = p;
      self(self, var + 1, remaining - p);
    }
    e[var] = 0;
  };
  rec(rec, 0, order);
  return out;
}

}  // namespace

TaylorOracle taylor_oracle_of(const Polynomial& f, const std::vector<double>& base, unsigned order) {
  TaylorOracle oracle{base, {}};
  for (const auto& alpha : multi_indices(f.num_vars(), order)) {
    Polynomial d = f;
    double factorial = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (unsigned k = 1; k <= alpha[i]; ++k) {
        d = d.partial(i);
        factorial *= k;
      }
    oracle.partials[alpha] = d.evaluate(std::span<const double>(base)) / factorial;
  }
  return oracle;
}

RealElement eval_fA_taylor(const TaylorOracle& oracle, const RealNearPoint& xi) {
  const std::size_t n = xi.n();
  const WeilAlgebra& a = xi.algebra();
  const auto p = xi.base();
  if (oracle.base.size() != n)
    throw Error(ErrorKind::BasePointMismatch, "oracle base point has " + std::to_string(oracle.base.size()) +
                                                  " coordinates, near point has " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(oracle.base[i] - p[i]) > 1e-12 * std::max(1.0, std::abs(p[i])))
      throw Error(ErrorKind::BasePointMismatch, "coordinate " + std::to_string(i + 1) + " differs");

  std::vector<RealElement> mu;
  for (const auto& c : xi.components()) mu.push_back(c.nilpotent_part());

  RealElement out = RealElement::zero(a);
  for (const auto& alpha : multi_indices(n, a.height())) {
    auto it = oracle.partials.find(alpha);
    if (it == oracle.partials.end()) {
      std::string key = "(";
      for (std::size_t i = 0; i < alpha.size(); ++i) key += (i ? "," : "") + std::to_string(alpha[i]);
      throw Error(ErrorKind::MissingPartial, "no partial for multi-index " + key + ")");
    }
    RealElement term = RealElement::scalar(a, it->second);
    for (std::size_t i = 0; i < n; ++i)
      if (alpha[i] > 0) term = term * mu[i].pow(alpha[i]);
    out += term;
  }
  return out;
}

PolyElement lift_symbolic(const Polynomial& f, const WeilAlgebra& a) {
  const std::size_t n = f.num_vars();
  if (n == 0) throw Error(ErrorKind::ArityMismatch, "function of zero variables");
  const std::size_t s = a.dim();
  const std::size_t vars = n * s;
  std::vector<PolyElement> generic;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Polynomial> coeffs;
    for (std::size_t j = 0; j < s; ++j) coeffs.push_back(Polynomial::variable(vars, chart_index(s, i, j)));
    generic.emplace_back(a, std::move(coeffs));
  }
  return evaluate_in_algebra<Polynomial>(f, generic);
}

std::vector<Polynomial> gamma_components(const Polynomial& f, const WeilAlgebra& a, std::size_t n) {
  if (f.num_vars() != n)
    throw Error(ErrorKind::ArityMismatch, "function of " + std::to_string(f.num_vars()) + " variables on R^" +
                                              std::to_string(n));
  return lift_symbolic(f, a).coeffs();
}

ChartVectorField::ChartVectorField(WeilAlgebra algebra, std::size_t n, std::vector<Polynomial> components)
    : algebra_(std::move(algebra)), n_(n), components_(std::move(components)) {
  const std::size_t dim = n_ * algebra_.dim();
  if (components_.size() != dim)
    throw Error(ErrorKind::DimensionMismatch, "chart field needs " + std::to_string(dim) + " components");
  for (const auto& c : components_)
    if (c.num_vars() != dim) throw Error(ErrorKind::DimensionMismatch, "chart field component over the wrong ring");
}

ChartVectorField ChartVectorField::zero(const WeilAlgebra& a, std::size_t n) {
  const std::size_t dim = n * a.dim();
  return ChartVectorField(a, n, std::vector<Polynomial>(dim, Polynomial(dim)));
}

Polynomial ChartVectorField::apply(const Polynomial& g) const {
  const std::size_t dim = components_.size();
  if (g.num_vars() != dim)
    throw Error(ErrorKind::DimensionMismatch, "chart function over " + std::to_string(g.num_vars()) + " variables");
  Polynomial out(dim);
  for (std::size_t v = 0; v < dim; ++v) {
    if (components_[v].is_zero()) continue;
    out += components_[v] * g.partial(v);
  }
  return out;
}

ChartVectorField lie_bracket(const ChartVectorField& x, const ChartVectorField& y) {
  if (!(x.algebra_ == y.algebra_) || x.n_ != y.n_)
    throw Error(ErrorKind::DimensionMismatch, "bracket of fields on different charts");
  std::vector<Polynomial> comps;
  for (std::size_t v = 0; v < x.components_.size(); ++v)
    comps.push_back(x.apply(y.components_[v]) - y.apply(x.components_[v]));
  return ChartVectorField(x.algebra_, x.n_, std::move(comps));
}

std::string ChartVectorField::to_string() const {
  const auto names = chart_variable_names(algebra_, n_);
  std::ostringstream os;
  bool first = true;
  for (std::size_t v = 0; v < components_.size(); ++v) {
    const Polynomial& c = components_[v];
    if (c.is_zero()) continue;
    std::string body = c.to_string(names);
    const bool single = c.terms().size() == 1;
    if (!first) {
      if (single && body.front() == '-') {
        os << " - ";
        body.erase(0, 1);
      } else {
        os << " + ";
      }
    }
    first = false;
    if (!single) body = "(" + body + ")";
    if (body == "1") os << "∂/∂" << names[v];
    else if (body == "-1") os << "-∂/∂" << names[v];
    else os << body << " ∂/∂" << names[v];
  }
  return first ? "0" : os.str();
}

PolyElement derivation_form(const ChartVectorField& x, const Polynomial& f) {
  const auto gamma = gamma_components(f, x.algebra(), x.n());
  std::vector<Polynomial> out;
  for (const auto& g : gamma) out.push_back(x.apply(g));
  return PolyElement(x.algebra(), std::move(out));
}

Element to_derivation_form(const ChartVectorField& x, const Polynomial& f, const NearPoint& xi) {
  if (!(xi.algebra() == x.algebra()) || xi.n() != x.n())
    throw Error(ErrorKind::DimensionMismatch, "near point and field live on different charts");
  return evaluate_at(derivation_form(x, f), xi);
}

ChartVectorField from_derivation_form(const WeilAlgebra& a, std::size_t n, const std::vector<PolyElement>& values) {
  if (values.size() != n)
    throw Error(ErrorKind::ArityMismatch, std::to_string(values.size()) + " coordinate values for R^" + std::to_string(n));
  const std::size_t s = a.dim();
  std::vector<Polynomial> comps(n * s, Polynomial(n * s));
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values[i].algebra() == a)) throw Error(ErrorKind::AlgebraMismatch, "value from another algebra");
    for (std::size_t j = 0; j < s; ++j) {
      if (values[i][j].num_vars() != n * s)
        throw Error(ErrorKind::DimensionMismatch, "value is not a chart function");
      comps[chart_index(s, i, j)] = values[i][j];
    }
  }
  return ChartVectorField(a, n, std::move(comps));
}

}  // namespace weil
