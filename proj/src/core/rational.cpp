#include "jtree/rational.hpp"

#include <cmath>
#include <limits>

#include "jtree/error.hpp"

namespace jtree {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("malformed integer '" + std::string(s) + "'");
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = s.substr(e + 1);
    mpz_class ez = parse_integer(exp_text);
    if (!ez.fits_slong_p() || abs(ez) > 4000) throw InputError("decimal exponent out of range");
    exponent = ez.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw InputError("malformed decimal");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
      throw InputError("malformed decimal '" + std::string(s) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw InputError("malformed number '" + std::string(s) + "'");
    digits = std::string(s);
  }
  mpz_class mant(digits.empty() ? std::string("0") : digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(mant, scale) : Rational(mant * scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw InputError("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  return parse_decimal(text);
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational from_double(double v) {
  if (!std::isfinite(v)) throw InputError("non-finite value cannot be made exact");
  Rational q(v);
  q.canonicalize();
  return q;
}

std::optional<std::pair<std::int64_t, std::int64_t>> as_int64_pair(const Rational& q) {
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!num.fits_slong_p() || !den.fits_slong_p()) return std::nullopt;
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return std::make_pair(static_cast<std::int64_t>(num.get_si()), static_cast<std::int64_t>(den.get_si()));
}

Rational sqrt_floor(const Rational& q, std::uint64_t den) {
  if (q < 0) throw InputError("sqrt_floor of a negative rational");
  // floor(sqrt(q) * den) = floor(sqrt(q * den^2)) = isqrt(floor(num * den^2 / qden)).
  mpz_class d(static_cast<unsigned long>(den));
  mpz_class scaled = q.get_num() * d * d / q.get_den();
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Rational r(root, d);
  r.canonicalize();
  return r;
}

}  // namespace jtree
