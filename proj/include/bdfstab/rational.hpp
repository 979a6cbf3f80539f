#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace bdfstab {

/// Exact rational number. mpq_class values produced by this library are
/// always canonical: reduced, with a positive denominator.
using Rational = mpq_class;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q", an integer, or a base-10 decimal such as "-0.92" into an
/// exact rational. Decimals are read as exact decimal fractions, never via
/// binary floating point ("0.92" -> 23/25). Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

int sign(const Rational& r);

Rational abs(const Rational& r);

}  // namespace bdfstab
