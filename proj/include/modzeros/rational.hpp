#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace modzeros {

// Exact rationals and integers. mpq_class keeps the canonical form
// (positive denominator, reduced) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// "num" for integers, "num/den" otherwise.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

/// Accepts "n", "-n", "n/d". Throws std::invalid_argument on bad input or d == 0.
Rational parse_rational(std::string_view text);

/// Round to the nearest double (ties to even).
double to_double(const Rational& x);

} // namespace modzeros
