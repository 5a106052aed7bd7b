#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "slopekit/error.hpp"

namespace slopekit {

namespace mp = boost::multiprecision;

// Expression templates off: values behave like plain arithmetic types and
// `auto` never captures an unevaluated expression.
using Integer = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::cpp_rational_backend, mp::et_off>;

inline Rational ratio(const Integer& num, const Integer& den) {
  require(den != 0, ErrorKind::invalid_input, "zero-denominator", "rational with zero denominator");
  return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

inline Rational ratio(std::int64_t num, std::int64_t den) { return ratio(Integer(num), Integer(den)); }

inline Integer numerator(const Rational& x) { return mp::numerator(x); }
inline Integer denominator(const Rational& x) { return mp::denominator(x); }
inline bool is_integral(const Rational& x) { return mp::denominator(x) == 1; }

/// Floor of an exact rational.
inline Integer floor(const Rational& x) {
  Integer n = mp::numerator(x);
  Integer d = mp::denominator(x);  // always > 0
  Integer q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

/// Exact form: "p" when integral, "p/q" otherwise.
inline std::string to_string(const Rational& x) {
  if (is_integral(x)) return mp::numerator(x).str();
  return mp::numerator(x).str() + "/" + mp::denominator(x).str();
}

/// Decimal approximation with `digits` significant digits. The C locale is
/// never changed by this project, so the decimal point is always '.'.
inline std::string to_decimal(const Rational& x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x.convert_to<double>());
  return buf;
}

namespace detail {

inline bool parse_integer_text(std::string_view s, Integer& out) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  out = Integer(std::string(s.substr(i)));
  if (neg) out = -out;
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses "p/q" or an integer. Whitespace around the tokens is ignored.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  Integer num, den(1);
  auto slash = s.find('/');
  bool ok;
  if (slash == std::string_view::npos) {
    ok = detail::parse_integer_text(s, num);
  } else {
    ok = detail::parse_integer_text(detail::trim(s.substr(0, slash)), num) &&
         detail::parse_integer_text(detail::trim(s.substr(slash + 1)), den);
  }
  if (!ok) fail(ErrorKind::invalid_input, "bad-rational", "expected p/q or an integer, got '" + std::string(text) + "'");
  return ratio(num, den);
}

}  // namespace slopekit
