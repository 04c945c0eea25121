#include "weil/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace weil {

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw InputError(std::string("missing array '") + key + "'");
  std::vector<std::string> out;
  for (const auto& v : j[key]) {
    if (!v.is_string()) throw InputError(std::string("'") + key + "' must contain strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

AlgebraSpec parse_algebra_spec(const json& j) {
  if (!j.is_object()) throw InputError("algebra spec must be a JSON object");
  if (!j.contains("type") || !j["type"].is_string()) throw InputError("algebra spec needs a string 'type'");
  const std::string type = j["type"].get<std::string>();
  if (type == "truncated_polynomial") {
    TruncatedPolynomialSpec s;
    s.variables = string_list(j, "variables");
    if (s.variables.empty()) throw InputError("truncated_polynomial needs at least one variable");
    if (!j.contains("order") || !j["order"].is_number_integer() || j["order"].get<long long>() < 0)
      throw InputError("truncated_polynomial needs a non-negative integer 'order'");
    s.order = j["order"].get<unsigned>();
    return s;
  }
  if (type == "monomial_quotient") {
    MonomialQuotientSpec s;
    s.variables = string_list(j, "variables");
    if (s.variables.empty()) throw InputError("monomial_quotient needs at least one variable");
    s.relations = string_list(j, "relations");
    return s;
  }
  if (type == "structure_constants") {
    StructureConstantsSpec s;
    if (!j.contains("table") || !j["table"].is_array()) throw InputError("structure_constants needs a 'table'");
    const std::size_t dim = j["table"].size();
    for (const auto& row : j["table"]) {
      if (!row.is_array() || row.size() != dim) throw InputError("table must be s x s x s");
      std::vector<std::vector<Rational>> r;
      for (const auto& entry : row) {
        if (!entry.is_array() || entry.size() != dim) throw InputError("table must be s x s x s");
        std::vector<Rational> e;
        for (const auto& q : entry) e.push_back(rational_from_json(q));
        r.push_back(std::move(e));
      }
      s.table.push_back(std::move(r));
    }
    if (dim == 0) throw InputError("empty structure table");
    if (j.contains("labels")) {
      s.labels = string_list(j, "labels");
      if (s.labels.size() != dim) throw InputError("label count differs from table dimension");
    }
    return s;
  }
  throw InputError("unknown algebra type '" + type + "'");
}

AlgebraSpec parse_algebra_spec_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return parse_algebra_spec(j);
}

json to_json(const AlgebraSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using S = std::decay_t<decltype(s)>;
        json j;
        if constexpr (std::is_same_v<S, TruncatedPolynomialSpec>) {
          j["type"] = "truncated_polynomial";
          j["variables"] = s.variables;
          j["order"] = s.order;
        } else if constexpr (std::is_same_v<S, MonomialQuotientSpec>) {
          j["type"] = "monomial_quotient";
          j["variables"] = s.variables;
          j["relations"] = s.relations;
        } else {
          j["type"] = "structure_constants";
          j["labels"] = s.labels;
          json table = json::array();
          for (const auto& row : s.table) {
            json r = json::array();
            for (const auto& entry : row) {
              json e = json::array();
              for (const auto& q : entry) e.push_back(rational_json(q));
              r.push_back(std::move(e));
            }
            table.push_back(std::move(r));
          }
          j["table"] = std::move(table);
        }
        return j;
      },
      spec);
}

WeilAlgebra build_algebra(const AlgebraSpec& spec) {
  return std::visit(
      [](const auto& s) -> WeilAlgebra {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, TruncatedPolynomialSpec>) {
          return truncated_polynomial_algebra(s.variables.size(), s.order, s.variables);
        } else if constexpr (std::is_same_v<S, MonomialQuotientSpec>) {
          std::vector<Monomial> relations;
          for (const auto& text : s.relations) {
            Polynomial p(s.variables.size());
            try {
              p = parse_polynomial(text, s.variables);
            } catch (const ParseError& e) {
              throw InputError("relation '" + text + "': " + e.what());
            }
            if (p.terms().size() != 1) throw InputError("relation '" + text + "' is not a monomial");
            relations.push_back(p.terms().begin()->first);
          }
          return monomial_quotient_algebra(s.variables, relations);
        } else {
          return from_structure_constants(s.labels, s.table);
        }
      },
      spec);
}

StructureConstantsSpec structure_constants_spec(const WeilAlgebra& a) { return {a.labels(), a.table()}; }

json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw InputError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) throw InputError("non-finite number");
    return Rational(d);
  }
  throw InputError("expected a rational (string \"p/q\" or number), got " + j.dump());
}

double round_sig12(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

NearPoint parse_near_point(const json& j, const WeilAlgebra& a) {
  if (!j.is_object() || !j.contains("base") || !j["base"].is_array())
    throw InputError("near point needs a 'base' array");
  const std::size_t n = j["base"].size();
  if (n == 0) throw InputError("near point base must be non-empty");
  const std::size_t s = a.dim();
  std::vector<Rational> base;
  for (const auto& v : j["base"]) base.push_back(rational_from_json(v));
  std::vector<Element> nil(n, Element::zero(a));
  if (j.contains("nilparts")) {
    const json& np = j["nilparts"];
    if (!np.is_array() || np.size() != n) throw InputError("'nilparts' must have one entry per base coordinate");
    for (std::size_t i = 0; i < n; ++i) {
      if (!np[i].is_array() || np[i].size() != s - 1)
        throw InputError("nilpart " + std::to_string(i + 1) + " must have " + std::to_string(s - 1) +
                         " coefficients over the maximal ideal basis");
      for (std::size_t j2 = 0; j2 + 1 < s; ++j2) nil[i][j2 + 1] = rational_from_json(np[i][j2]);
    }
  }
  return make_near_point(a, base, nil);
}

json near_point_json(const NearPoint& xi) {
  json base = json::array(), nil = json::array();
  for (const auto& c : xi.components()) {
    base.push_back(rational_json(c[0]));
    json row = json::array();
    for (std::size_t j = 1; j < c.dim(); ++j) row.push_back(rational_json(c[j]));
    nil.push_back(std::move(row));
  }
  return json{{"base", std::move(base)}, {"nilparts", std::move(nil)}};
}

json near_point_json(const RealNearPoint& xi) {
  json base = json::array(), nil = json::array();
  for (const auto& c : xi.components()) {
    base.push_back(round_sig12(c[0]));
    json row = json::array();
    for (std::size_t j = 1; j < c.dim(); ++j) row.push_back(round_sig12(c[j]));
    nil.push_back(std::move(row));
  }
  return json{{"base", std::move(base)}, {"nilparts", std::move(nil)}};
}

namespace {

std::vector<unsigned> parse_multi_index(const std::string& key) {
  if (key.size() < 2 || key.front() != '(' || key.back() != ')')
    throw InputError("multi-index key '" + key + "' must look like \"(2,0)\"");
  std::vector<unsigned> alpha;
  std::stringstream ss(key.substr(1, key.size() - 2));
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    long v = -1;
    try {
      v = std::stol(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < part.size() && part[used] == ' ') ++used;
    if (used != part.size() || v < 0) throw InputError("bad multi-index entry '" + part + "' in '" + key + "'");
    alpha.push_back(static_cast<unsigned>(v));
  }
  return alpha;
}

}  // namespace

TaylorOracle parse_taylor_oracle(const json& j) {
  if (!j.is_object() || !j.contains("base") || !j["base"].is_array())
    throw InputError("Taylor oracle needs a 'base' array");
  if (!j.contains("partials") || !j["partials"].is_object()) throw InputError("Taylor oracle needs a 'partials' object");
  TaylorOracle o;
  for (const auto& v : j["base"]) o.base.push_back(rational_from_json(v).get_d());
  for (const auto& [key, value] : j["partials"].items()) {
    auto alpha = parse_multi_index(key);
    if (alpha.size() != o.base.size())
      throw InputError("multi-index '" + key + "' has the wrong length");
    o.partials[alpha] = rational_from_json(value).get_d();
  }
  return o;
}

json taylor_oracle_json(const TaylorOracle& oracle) {
  json partials = json::object();
  for (const auto& [alpha, v] : oracle.partials) {
    std::string key = "(";
    for (std::size_t i = 0; i < alpha.size(); ++i) key += (i ? "," : "") + std::to_string(alpha[i]);
    partials[key + ")"] = round_sig12(v);
  }
  json base = json::array();
  for (double b : oracle.base) base.push_back(round_sig12(b));
  return json{{"base", std::move(base)}, {"partials", std::move(partials)}};
}

json derivation_json(const Derivation& d) {
  json rows = json::array();
  const auto& m = d.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json lie_constants_json(const LieStructure& lie) {
  json out = json::array();
  const std::size_t r = lie.dim();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        if (lie.constant(i, j, k) != 0)
          out.push_back(json{{"i", i}, {"j", j}, {"k", k}, {"value", rational_json(lie.constant(i, j, k))}});
  return out;
}

json algebra_summary_json(const WeilAlgebra& a) {
  return json{{"dim", a.dim()}, {"height", a.height()}, {"width", a.width()}, {"labels", a.labels()}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace weil
