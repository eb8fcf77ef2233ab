#pragma once

// Exact rational coefficients shared by all symbolic modules.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace itolog {

using Rational = mpq_class;

/// Canonicalized num/den. Throws std::invalid_argument on a zero denominator.
Rational make_rational(long num, long den = 1);

/// "3", "-1/6"
std::string to_string(const Rational& q);

/// Accepts "n" or "n/d" with an optional sign; returns a canonical value.
Rational parse_rational(std::string_view text);

/// Binomial coefficient as an exact integer.
mpz_class binomial(unsigned long n, unsigned long k);

}  // namespace itolog
