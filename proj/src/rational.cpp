#include "weil/rational.hpp"

#include <cctype>

#include "weil/error.hpp"

namespace weil {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoUnit: return "NoUnit";
    case ErrorKind::NotLocal: return "NotLocal";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::InfiniteDimensional: return "InfiniteDimensional";
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NonzeroScalarPart: return "NonzeroScalarPart";
    case ErrorKind::BasePointMismatch: return "BasePointMismatch";
    case ErrorKind::MissingPartial: return "MissingPartial";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotADerivation: return "NotADerivation";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) {
  // mpq_class keeps values canonical after arithmetic; get_str prints the
  // sign on the numerator and drops a unit denominator.
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  auto digits = [&](std::size_t start) {
    std::size_t end = start;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    if (end == start) throw ParseError(start, "expected digits in rational '" + std::string(text) + "'");
    return end;
  };
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::size_t num_end = digits(pos);
  Integer num(std::string(text.substr(pos, num_end - pos)));
  Integer den = 1;
  pos = num_end;
  if (pos < text.size() && text[pos] == '/') {
    std::size_t den_end = digits(pos + 1);
    den = Integer(std::string(text.substr(pos + 1, den_end - pos - 1)));
    if (den == 0) throw ParseError(pos + 1, "zero denominator");
    pos = den_end;
  }
  if (pos != text.size()) throw ParseError(pos, "trailing characters in rational '" + std::string(text) + "'");
  Rational q(negative ? Integer(-num) : num, den);
  q.canonicalize();
  return q;
}

}  // namespace weil
