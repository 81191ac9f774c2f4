#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace treecs {

/// Exact rational scalar used for every coefficient, value and mass.
using Rational = mpq_class;

/// Canonical "p/q" text with q > 0 and gcd(p, q) = 1; integers print as "p/1".
std::string to_string(const Rational& q);

/// Accepts "p/q" or a bare integer "p"; rejects q = 0 and stray characters.
/// The result is canonicalized.
Rational parse_rational(std::string_view text);

inline Rational positive_part(const Rational& q) { return q > 0 ? q : Rational(0); }
inline Rational negative_part(const Rational& q) { return q < 0 ? Rational(-q) : Rational(0); }
inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline Rational max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace treecs
