#pragma once

#include <optional>
#include <string>

#include "weil/io.hpp"

namespace weil {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Output of one command: the JSON document, its text rendering and the
/// exit status. The JSON is a pure function of the inputs.
struct Report {
  json data;
  std::string text;
  int exit_code = kExitOk;
};

struct TextStyle {
  bool color = false;
};

Report check_report(const AlgebraSpec& spec, TextStyle style = {});
Report derivations_report(const AlgebraSpec& spec, TextStyle style = {});
Report field_report(const AlgebraSpec& spec, std::size_t n, std::size_t index, TextStyle style = {});

/// `point` is near-point JSON; `n`, when given, must match its length.
/// A zero tolerance selects exact rank.
Report foliation_report(const AlgebraSpec& spec, const json& point, std::optional<std::size_t> n, double tol,
                        TextStyle style = {});
Report flow_report(const AlgebraSpec& spec, const json& point, std::optional<std::size_t> n, std::size_t index,
                   double t, TextStyle style = {});
Report liouville_report(std::size_t n, TextStyle style = {});

}  // namespace weil
