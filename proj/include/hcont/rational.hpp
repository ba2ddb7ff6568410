#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "error.hpp"

namespace hcont {

// Expression templates off: results are always concrete values, so `auto` is safe.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline int sign(const Rational& q) { return q.sign(); }

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational abs(const Rational& q) { return q.sign() < 0 ? Rational(-q) : q; }

/// 2^k for any integer k.
inline Rational pow2(int k) {
  Integer one = 1;
  if (k >= 0) return Rational(Integer(one << k));
  return Rational(one, Integer(one << (-k)));
}

/// Smallest integer >= q.
inline Integer ceil_of(const Rational& q) {
  Integer n = numerator_of(q), d = denominator_of(q);
  Integer fl = n / d;  // truncates toward zero
  if (fl * d != n && q.sign() > 0) fl += 1;
  return fl;
}

inline Integer floor_of(const Rational& q) {
  Integer n = numerator_of(q), d = denominator_of(q);
  Integer fl = n / d;
  if (fl * d != n && q.sign() < 0) fl -= 1;
  return fl;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// "p" for integers, "p/q" otherwise; the canonical text form used in all JSON.
inline std::string to_string(const Rational& q) {
  if (denominator_of(q) == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) fail(ErrorCode::ParseError, "not a rational number: '" + std::string(whole) + "'");
  Integer v{std::string(s)};
  return neg ? Integer(-v) : v;
}

}  // namespace detail

/// Accepts "p", "p/q" and plain decimals such as "-0.125" (converted exactly).
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) fail(ErrorCode::ParseError, "empty rational literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = detail::parse_integer(s.substr(0, slash), text);
    std::string_view den_text = s.substr(slash + 1);
    if (!detail::all_digits(den_text)) fail(ErrorCode::ParseError, "bad denominator in '" + std::string(text) + "'");
    Integer den(std::string{den_text});
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool neg = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if ((int_part.empty() && frac.empty()) || (!int_part.empty() && !detail::all_digits(int_part)) ||
        (!frac.empty() && !detail::all_digits(frac)))
      fail(ErrorCode::ParseError, "not a rational number: '" + std::string(text) + "'");
    Integer whole = int_part.empty() ? Integer(0) : Integer(std::string(int_part));
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
    Rational v = Rational(whole) + Rational(f, scale);
    return neg ? Rational(-v) : v;
  }
  return Rational(detail::parse_integer(s, text));
}

}  // namespace hcont
