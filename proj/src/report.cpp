#include "weil/report.hpp"

#include <cmath>
#include <sstream>

#include "weil/foliation.hpp"

namespace weil {

namespace {

std::string mark(bool ok, TextStyle style) {
  if (!style.color) return ok ? "[PASS]" : "[FAIL]";
  return ok ? "\x1b[32m[PASS]\x1b[0m" : "\x1b[31m[FAIL]\x1b[0m";
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

json error_json(const Error& e) { return json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}; }

// Shared envelope: command, status, algebra summary, result payload.
struct Envelope {
  explicit Envelope(std::string cmd) : command(std::move(cmd)) {}

  std::string command;
  std::optional<WeilAlgebra> algebra;
  json result = json::object();
  std::optional<json> error;
  std::ostringstream text;
  int exit_code = kExitOk;

  Report finish() {
    Report r;
    r.data["command"] = command;
    r.data["status"] = exit_code == kExitOk ? "ok" : "fail";
    r.data["exit_code"] = exit_code;
    r.data["algebra"] = algebra ? algebra_summary_json(*algebra) : json(nullptr);
    r.data["result"] = std::move(result);
    if (error) r.data["error"] = *error;
    r.text = text.str();
    r.exit_code = exit_code;
    return r;
  }

  void fail(const Error& e) {
    exit_code = kExitDomain;
    error = error_json(e);
    text << "error: " << e.what() << "\n";
  }
};

std::string matrix_text(const Matrix<Rational>& m) {
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::string> cells;
    for (std::size_t j = 0; j < m.cols(); ++j) cells.push_back(to_string(m(i, j)));
    rows.push_back(join(cells, ", "));
  }
  return "[" + join(rows, "; ") + "]";
}

std::string images_text(const Derivation& d, std::size_t index) {
  const WeilAlgebra& a = d.algebra();
  std::vector<std::string> parts;
  for (std::size_t j = 1; j < a.dim(); ++j) {
    const Element img = d(Element::basis(a, j));
    if (!img.is_zero()) parts.push_back(a.label(j) + " ↦ " + to_string(img));
  }
  return "d" + std::to_string(index) + ": " + (parts.empty() ? "0" : join(parts, ", "));
}

std::string vector_text(const std::vector<Rational>& v) {
  std::vector<std::string> cells;
  for (const auto& q : v) cells.push_back(to_string(q));
  return "(" + join(cells, ", ") + ")";
}

std::string point_text(const NearPoint& xi) {
  std::vector<std::string> parts;
  for (const auto& c : xi.components()) parts.push_back(to_string(c));
  return "(" + join(parts, ", ") + ")";
}

std::string point_text(const RealNearPoint& xi) {
  std::vector<std::string> parts;
  for (const auto& c : xi.components()) parts.push_back(to_string(c));
  return "(" + join(parts, ", ") + ")";
}

std::size_t resolve_n(const json& point, std::optional<std::size_t> n) {
  if (!point.is_object() || !point.contains("base") || !point["base"].is_array())
    throw InputError("near point needs a 'base' array");
  const std::size_t len = point["base"].size();
  if (n && *n != len)
    throw InputError("--n " + std::to_string(*n) + " disagrees with the point dimension " + std::to_string(len));
  return len;
}

}  // namespace

Report check_report(const AlgebraSpec& spec, TextStyle) {
  Envelope env("check");
  try {
    const WeilAlgebra a = build_algebra(spec);
    env.algebra = a;
    env.result = json{{"weil", true}, {"dim", a.dim()}, {"height", a.height()}, {"width", a.width()},
                      {"labels", a.labels()}};
    env.text << "Weil: dim " << a.dim() << ", height " << a.height() << ", width " << a.width() << "\n";
    env.text << "basis: " << join(a.labels(), ", ") << "\n";
  } catch (const Error& e) {
    env.result = json{{"weil", false}, {"failed_axiom", std::string(to_string(e.kind()))}};
    env.exit_code = kExitDomain;
    env.error = error_json(e);
    env.text << "not Weil: " << e.what() << "\n";
  }
  return env.finish();
}

Report derivations_report(const AlgebraSpec& spec, TextStyle) {
  Envelope env("derivations");
  try {
    const WeilAlgebra a = build_algebra(spec);
    env.algebra = a;
    const auto basis = derivation_basis(a);
    const LieStructure lie = lie_structure(basis);
    json mats = json::array();
    for (const auto& d : basis) mats.push_back(derivation_json(d));
    const std::string normalization =
        a.dim() == 2 ? "generator scaled so that d0 sends the nilpotent basis element e to -e"
                     : "reduced row echelon form of the solution space, row-major entry order";
    env.result = json{{"r", basis.size()},
                      {"normalization", normalization},
                      {"basis", std::move(mats)},
                      {"lie_constants", lie_constants_json(lie)},
                      {"abelian", lie.is_abelian()},
                      {"jacobi_residual", rational_json(lie.jacobi_residual())}};
    env.text << "Der(A): r = " << basis.size() << "\n";
    if (!basis.empty()) env.text << "basis normalization: " << normalization << "\n";
    for (std::size_t k = 0; k < basis.size(); ++k) {
      env.text << images_text(basis[k], k) << "\n";
      env.text << "  matrix " << matrix_text(basis[k].matrix()) << "\n";
    }
    if (basis.size() > 1) {
      if (lie.is_abelian()) {
        env.text << "Lie structure: abelian\n";
      } else {
        env.text << "Lie structure:\n";
        for (std::size_t i = 0; i < lie.dim(); ++i)
          for (std::size_t j = i + 1; j < lie.dim(); ++j) {
            std::string terms;
            for (std::size_t k = 0; k < lie.dim(); ++k) {
              const Rational& g = lie.constant(i, j, k);
              if (g == 0) continue;
              const Rational mag = abs(g);
              if (terms.empty()) terms += g < 0 ? "-" : "";
              else terms += g < 0 ? " - " : " + ";
              terms += (mag == 1 ? "" : to_string(mag) + "·") + "d" + std::to_string(k);
            }
            if (!terms.empty()) env.text << "  [d" << i << ", d" << j << "] = " << terms << "\n";
          }
      }
    }
  } catch (const Error& e) {
    env.fail(e);
  }
  return env.finish();
}

Report field_report(const AlgebraSpec& spec, std::size_t n, std::size_t index, TextStyle) {
  if (n == 0) throw InputError("--n must be at least 1");
  Envelope env("field");
  try {
    const WeilAlgebra a = build_algebra(spec);
    env.algebra = a;
    const auto basis = derivation_basis(a);
    if (index >= basis.size())
      throw Error(ErrorKind::IndexOutOfRange,
                  "derivation " + std::to_string(index) + " requested, r = " + std::to_string(basis.size()));
    const InducedField field = induced_field(a, basis[index], n);
    const ChartVectorField chart = field.chart_field();
    const auto names = chart_variable_names(a, n);

    json components = json::object();
    for (std::size_t v = 0; v < names.size(); ++v) components[names[v]] = chart.components()[v].to_string(names);
    json values = json::array();
    std::vector<std::string> value_text;
    for (std::size_t i = 0; i < n; ++i) {
      const PolyElement v = derivation_form(chart, Polynomial::variable(n, i));
      json parts = json::array();
      for (const auto& p : v.coeffs()) parts.push_back(p.to_string(names));
      const std::string shown = to_string(v, names);
      values.push_back(json{{"coordinate", "x" + std::to_string(i + 1)}, {"value", shown}, {"components", parts}});
      value_text.push_back("d" + std::to_string(index) + "*(x" + std::to_string(i + 1) + ") = " + shown);
    }
    env.result = json{{"derivation", index},
                      {"n", n},
                      {"matrix", derivation_json(basis[index])},
                      {"chart", chart.to_string()},
                      {"chart_components", std::move(components)},
                      {"coordinate_values", std::move(values)}};
    env.text << join(value_text, "; ") << "\n";
    env.text << "chart: " << chart.to_string() << "\n";
  } catch (const Error& e) {
    env.fail(e);
  }
  return env.finish();
}

Report foliation_report(const AlgebraSpec& spec, const json& point, std::optional<std::size_t> n_opt, double tol,
                        TextStyle style) {
  const std::size_t n = resolve_n(point, n_opt);
  if (tol < 0) throw InputError("--tol must be non-negative");
  Envelope env("foliation");
  try {
    const WeilAlgebra a = build_algebra(spec);
    env.algebra = a;
    const NearPoint xi = parse_near_point(point, a);
    const auto basis = derivation_basis(a);
    const LieStructure lie = lie_structure(basis);
    const DistributionSample ds = distribution_at(a, basis, xi, tol);
    const InvolutivityReport inv = involutivity_check(lie, n);

    json gens = json::array();
    env.text << "r = " << basis.size() << ", chart dimension " << chart_dimension(a, n) << "\n";
    env.text << "point: " << point_text(xi) << "\n";
    env.text << "generators:\n";
    for (std::size_t k = 0; k < ds.generators.size(); ++k) {
      json g = json::array();
      for (const auto& q : ds.generators[k]) g.push_back(rational_json(q));
      gens.push_back(std::move(g));
      env.text << "  d" << k << "*: " << vector_text(ds.generators[k]) << "\n";
    }
    env.text << "rank: " << ds.rank << (tol == 0.0 ? " (exact)" : " (tol " + fmt(tol) + ")") << "\n";

    json bracket_law = json::array();
    env.text << "involutivity:\n";
    for (const auto& p : inv.pairs) {
      bracket_law.push_back(json{{"i", p.i}, {"j", p.j}, {"status", p.passed ? "pass" : "fail"}});
      env.text << "  " << mark(p.passed, style) << " [d" << p.i << "*, d" << p.j << "*]\n";
    }
    if (inv.pairs.empty()) env.text << "  (no pairs)\n";

    json flow_checks = json::array();
    env.text << "flow checks:\n";
    const RealNearPoint rxi = to_real(xi);
    bool flows_ok = true;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const double err = flow_derivative_error(InducedField(basis[k], n), rxi);
      const bool ok = err <= 1e-6;
      flows_ok = flows_ok && ok;
      flow_checks.push_back(json{{"derivation", k}, {"fd_relative_error", round_sig12(err)}, {"status", ok ? "pass" : "fail"}});
      env.text << "  " << mark(ok, style) << " flow of d" << k << "* matches the field (rel. err " << fmt(err) << ")\n";
    }

    env.result = json{{"r", basis.size()},
                      {"point", near_point_json(xi)},
                      {"generators", std::move(gens)},
                      {"rank", ds.rank},
                      {"tolerance", tol},
                      {"bracket_law", std::move(bracket_law)},
                      {"rank_samples", json::array({json{{"point", near_point_json(xi)}, {"rank", ds.rank}}})},
                      {"flow_checks", std::move(flow_checks)}};
    if (!inv.all_passed() || !flows_ok) env.exit_code = kExitDomain;
  } catch (const Error& e) {
    env.fail(e);
  }
  return env.finish();
}

Report flow_report(const AlgebraSpec& spec, const json& point, std::optional<std::size_t> n_opt, std::size_t index,
                   double t, TextStyle style) {
  resolve_n(point, n_opt);
  if (!std::isfinite(t)) throw InputError("--t must be finite");
  Envelope env("flow");
  try {
    const WeilAlgebra a = build_algebra(spec);
    env.algebra = a;
    const NearPoint xi = parse_near_point(point, a);
    const auto basis = derivation_basis(a);
    if (index >= basis.size())
      throw Error(ErrorKind::IndexOutOfRange,
                  "derivation " + std::to_string(index) + " requested, r = " + std::to_string(basis.size()));
    const RealNearPoint start = to_real(xi);
    const RealNearPoint end = flow(a, basis[index], t, start);
    const double drift = base_drift(start, end);
    const bool preserved = drift <= 1e-12;
    env.result = json{{"derivation", index},
                      {"t", round_sig12(t)},
                      {"input", near_point_json(start)},
                      {"output", near_point_json(end)},
                      {"base_drift", round_sig12(drift)},
                      {"base_preserved", preserved}};
    env.text << "flow of d" << index << "* for t = " << fmt(t) << "\n";
    env.text << "  from " << point_text(start) << "\n";
    env.text << "  to   " << point_text(end) << "\n";
    env.text << "  " << mark(preserved, style) << " base point preserved (drift " << fmt(drift) << ")\n";
    if (!preserved) env.exit_code = kExitDomain;
  } catch (const Error& e) {
    env.fail(e);
  }
  return env.finish();
}

Report liouville_report(std::size_t n, TextStyle style) {
  if (n == 0) throw InputError("--n must be at least 1");
  Envelope env("liouville");
  const LiouvilleReport lr = liouville_demo(n);
  env.algebra = dual_numbers();
  const auto names = chart_variable_names(*env.algebra, n);
  json checks = json::array();
  for (const auto& c : lr.checks) {
    checks.push_back(json{{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"detail", c.detail}});
    env.text << mark(c.passed, style) << " " << c.name << ": " << c.detail << "\n";
  }
  json values = json::array();
  for (const auto& v : lr.coordinate_values) values.push_back(to_string(v, names));
  json ranks = json::array();
  for (const auto& rs : lr.ranks)
    ranks.push_back(json{{"point", near_point_json(rs.point)}, {"zero_section", rs.zero_section}, {"rank", rs.rank}});
  env.result = json{{"n", n},
                    {"r", lr.r},
                    {"generator", lr.basis.empty() ? json(nullptr) : derivation_json(lr.basis[0])},
                    {"chart", lr.chart.to_string()},
                    {"coordinate_values", std::move(values)},
                    {"rank_samples", std::move(ranks)},
                    {"checks", std::move(checks)}};
  env.exit_code = lr.all_passed() ? kExitOk : kExitDomain;
  return env.finish();
}

}  // namespace weil
