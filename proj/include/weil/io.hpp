#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "weil/algebra.hpp"
#include "weil/derivations.hpp"
#include "weil/nearpoints.hpp"

namespace weil {

using json = nlohmann::ordered_json;

/// Malformed input files or arguments (as opposed to mathematical failures).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TruncatedPolynomialSpec {
  std::vector<std::string> variables;
  unsigned order = 0;
};

struct MonomialQuotientSpec {
  std::vector<std::string> variables;
  std::vector<std::string> relations;
};

struct StructureConstantsSpec {
  std::vector<std::string> labels;
  StructureTable table;
};

using AlgebraSpec = std::variant<TruncatedPolynomialSpec, MonomialQuotientSpec, StructureConstantsSpec>;

/// {"type": "truncated_polynomial" | "monomial_quotient" | "structure_constants", ...}.
/// Throws InputError when the payload is not well formed.
AlgebraSpec parse_algebra_spec(const json& j);
AlgebraSpec parse_algebra_spec_text(std::string_view text);
json to_json(const AlgebraSpec& spec);

/// Throws Error when the table fails an axiom.
WeilAlgebra build_algebra(const AlgebraSpec& spec);

/// The normalized structure-constant spec of an algebra.
StructureConstantsSpec structure_constants_spec(const WeilAlgebra& a);

/// Rationals are written as canonical "p/q" strings. Reading also accepts
/// JSON integers and floats (the latter converted exactly).
json rational_json(const Rational& q);
Rational rational_from_json(const json& j);

/// Rounds to 12 significant digits, the precision of every report.
double round_sig12(double x);

/// {"base": [...], "nilparts": [[coefficients over a_1..a_{s-1}], ...]}.
NearPoint parse_near_point(const json& j, const WeilAlgebra& a);
json near_point_json(const NearPoint& xi);
json near_point_json(const RealNearPoint& xi);

/// {"base": [...], "partials": {"(2,0)": value, ...}}, values already divided by alpha!.
TaylorOracle parse_taylor_oracle(const json& j);
json taylor_oracle_json(const TaylorOracle& oracle);

/// s x s matrix, row-major, entries as rational strings.
json derivation_json(const Derivation& d);
/// Nonzero constants as {"i", "j", "k", "value"} with i < j.
json lie_constants_json(const LieStructure& lie);
json algebra_summary_json(const WeilAlgebra& a);

json read_json_file(const std::string& path);

}  // namespace weil
