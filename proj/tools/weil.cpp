// weil: command-line front end for Weil algebras, derivations and the
// canonical foliation of near-point manifolds.

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "weil/report.hpp"

namespace {

weil::AlgebraSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw weil::InputError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return weil::parse_algebra_spec_text(buf.str());
}

bool use_color() {
  const char* env = std::getenv("WEIL_COLOR");
  if (env && std::string(env) == "0") return false;
  return ::isatty(STDOUT_FILENO) != 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil algebras, derivations and canonical foliations of near-point manifolds"};
  app.require_subcommand(1);

  bool as_json = false;
  app.add_flag("--json", as_json, "Emit the machine-readable JSON report");

  std::string spec_path, point_path;
  std::size_t n = 1;
  std::size_t index = 0;
  double t = 0.0;
  double tol = 0.0;
  std::size_t liouville_n = 1;

  auto* check = app.add_subcommand("check", "Verify the local-algebra axioms");
  check->add_option("spec", spec_path, "Algebra spec file (JSON)")->required();

  auto* derivations = app.add_subcommand("derivations", "Basis of Der(A) and its Lie structure");
  derivations->add_option("spec", spec_path, "Algebra spec file (JSON)")->required();

  auto* field = app.add_subcommand("field", "Chart and derivation form of an induced field d_i*");
  field->add_option("spec", spec_path, "Algebra spec file (JSON)")->required();
  field->add_option("--n", n, "Dimension of the base manifold R^n");
  field->add_option("--derivation", index, "Index into the Der(A) basis");

  auto* foliation = app.add_subcommand("foliation", "Generators, rank and involutivity at a point");
  foliation->add_option("spec", spec_path, "Algebra spec file (JSON)")->required();
  auto* fol_n = foliation->add_option("--n", n, "Dimension of the base manifold (must match the point)");
  foliation->add_option("--point", point_path, "Near point file (JSON)")->required();
  foliation->add_option("--tol", tol, "Rank threshold; 0 selects exact rank")->check(CLI::NonNegativeNumber);

  auto* flow = app.add_subcommand("flow", "Flow a near point along an induced field");
  flow->add_option("spec", spec_path, "Algebra spec file (JSON)")->required();
  auto* flow_n = flow->add_option("--n", n, "Dimension of the base manifold (must match the point)");
  flow->add_option("--derivation", index, "Index into the Der(A) basis");
  flow->add_option("--t", t, "Flow time");
  flow->add_option("--point", point_path, "Near point file (JSON)")->required();

  auto* liouville = app.add_subcommand("liouville", "Tangent-bundle check: canonical foliation = Liouville field");
  liouville->add_option("--n", liouville_n, "Dimension of the base manifold");

  for (auto* sub : {check, derivations, field, foliation, flow, liouville})
    sub->add_flag("--json", as_json, "Emit the machine-readable JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : weil::kExitUsage;
  }

  const weil::TextStyle style{!as_json && use_color()};
  weil::Report report;
  try {
    if (*check) {
      report = weil::check_report(load_spec(spec_path), style);
    } else if (*derivations) {
      report = weil::derivations_report(load_spec(spec_path), style);
    } else if (*field) {
      report = weil::field_report(load_spec(spec_path), n, index, style);
    } else if (*foliation) {
      const std::optional<std::size_t> want = fol_n->count() ? std::optional(n) : std::nullopt;
      report = weil::foliation_report(load_spec(spec_path), weil::read_json_file(point_path), want, tol, style);
    } else if (*flow) {
      const std::optional<std::size_t> want = flow_n->count() ? std::optional(n) : std::nullopt;
      report = weil::flow_report(load_spec(spec_path), weil::read_json_file(point_path), want, index, t, style);
    } else if (*liouville) {
      report = weil::liouville_report(liouville_n, style);
    }
  } catch (const weil::InputError& e) {
    std::cerr << "weil: " << e.what() << "\n";
    return weil::kExitUsage;
  } catch (const weil::Error& e) {
    std::cerr << "weil: " << e.what() << "\n";
    return weil::kExitDomain;
  }

  if (as_json) std::cout << report.data.dump(2) << "\n";
  else std::cout << report.text;
  return report.exit_code;
}
