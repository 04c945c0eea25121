#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weil {

/// Failure categories raised by the library. The first group names the
/// local-algebra axiom that a multiplication table violates.
enum class ErrorKind {
  NotCommutative,
  NotAssociative,
  NoUnit,
  NotLocal,
  NotNilpotent,
  InfiniteDimensional,
  MalformedTable,
  AlgebraMismatch,
  ArityMismatch,
  DimensionMismatch,
  IndexOutOfRange,
  NonzeroScalarPart,
  BasePointMismatch,
  MissingPartial,
  NotClosed,
  NotADerivation,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax error in textual input; `position` is a 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& detail)
      : std::runtime_error("parse error at position " + std::to_string(position) + ": " + detail),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace weil
