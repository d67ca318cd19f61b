#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace trimod {

// Exact rational scalar used throughout the library. Always canonical.
using Rational = mpq_class;

// Parses "p/q" or an integer literal. Decimal and exponent forms are rejected so
// that inputs stay exact. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

// Exact square root when the argument is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& value);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace trimod
