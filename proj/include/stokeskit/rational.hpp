#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace stokeskit {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q", "-1.25" or "3e-2" style decimals into an exact rational.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// p/q in canonical form (mpq_class(p, q) does not reduce).
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer binomial(unsigned long n, unsigned long k);

/// Floor of a rational as an integer.
Integer floor(const Rational& r);

/// Best rational approximation of x with denominator <= max_den (continued fractions).
Rational rationalize(double x, long max_den);

/// √r when r ≥ 0 is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& r);

}  // namespace stokeskit
