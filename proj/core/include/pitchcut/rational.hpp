#ifndef PITCHCUT_RATIONAL_HPP
#define PITCHCUT_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace pitchcut {

/// Exact rational number. All coefficient, slack and LP arithmetic in this
/// library uses this type; there is no floating-point path anywhere.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a/b", "-a/b", plain integers, or decimal strings like "0.25".
/// Decimals are converted exactly (0.1 becomes 1/10).
Rational parse_rational(const std::string& text);

/// Canonical "a" or "a/b" rendering.
std::string to_string(const Rational& r);

/// True if r has a finite decimal expansion (denominator of the form 2^a 5^b).
bool has_finite_decimal(const Rational& r);

/// Exact decimal rendering; throws if has_finite_decimal(r) is false.
std::string to_decimal_string(const Rational& r);

}  // namespace pitchcut

#endif
