#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace jtree {

/// Exact rational scalar used by every norm engine.
using Rational = mpq_class;

/// Parses "p", "p/q" or a plain decimal literal ("0.25", "-1e-3") into an exact rational.
/// Throws InputError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms; throws InputError when den == 0.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact binary value of a finite double.
Rational from_double(double v);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Numerator/denominator as int64 when both fit.
std::optional<std::pair<std::int64_t, std::int64_t>> as_int64_pair(const Rational& q);

/// Largest rational r with denominator `den` such that r * r <= q (q >= 0).
Rational sqrt_floor(const Rational& q, std::uint64_t den);

}  // namespace jtree
