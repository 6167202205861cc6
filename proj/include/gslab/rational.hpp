#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gslab {

/// Arbitrary-precision exact rational. Always kept in lowest terms.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "-n", "n/m" or a finite decimal such as "0.25" into an exact
/// rational. Throws std::invalid_argument on anything else or a zero
/// denominator.
Rational parse_rational(std::string_view text);

/// "n" for integers, "n/m" otherwise.
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace gslab
