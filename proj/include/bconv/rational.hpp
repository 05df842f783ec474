#pragma once

// Exact rational helpers on top of GMP's C++ interface.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bconv {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "num/den" or a bare integer. Whitespace is not accepted.
// Throws ContractViolation on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// Always "num/den", den > 0, reduced. Used wherever rationals cross an I/O boundary.
std::string to_fraction_string(const Rational& q);

// "num" when the denominator is 1, otherwise "num/den".
std::string to_compact_string(const Rational& q);

// Exponent of `prime` in |value|; value must be nonzero.
long valuation(const Integer& value, unsigned long prime);

// Removes every factor of `prime` from value, returning the exponent removed.
long strip_factor(Integer& value, unsigned long prime);

Integer pow_integer(const Integer& base, unsigned long exponent);
Rational pow_rational(const Rational& base, unsigned long exponent);

// floor(q) and q - floor(q) in [0, 1).
Integer floor_of(const Rational& q);
Rational fractional_part(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// num/den in canonical form. mpq_class(num, den) alone does not reduce.
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace bconv
