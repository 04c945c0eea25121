#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace weil {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: lowest terms, sign on the numerator, denominator
/// omitted when it is 1 ("-3/2", "5", "0").
std::string to_string(const Rational& q);

/// Accepts "p", "p/q", with an optional leading sign. Throws ParseError.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace weil
