#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace polyflow {

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator; every constructor path in this library canonicalizes.
using Rational = mpq_class;

/// Parses "a", "-a", "a/b". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

bool is_integer(const Rational& q);

/// Best rational approximation with denominator <= max_den, via continued
/// fractions (convergents plus the admissible semiconvergent).
Rational best_rational(double value, long max_den);

}  // namespace polyflow
