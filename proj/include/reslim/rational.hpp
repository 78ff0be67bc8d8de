#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "reslim/error.hpp"

namespace reslim {

/// Exact arbitrary-precision rational. Always kept in canonical form by
/// the backend, so equality is structural.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

/// Parses "7", "3/2", "0.25" (and a leading '-'). Throws ParseError.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    BigInt d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(BigInt(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !detail::all_digits(whole)) || !detail::all_digits(frac))
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt w = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
    value = Rational(w * scale + BigInt(std::string(frac)), scale);
  } else {
    if (!detail::all_digits(s))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    value = Rational(BigInt(std::string(s)));
  }
  return negative ? Rational(-value) : value;
}

/// Canonical text: "3/2", or "4" when the denominator is one.
inline std::string format_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Largest integer n with n <= q.
inline BigInt floor_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt f = num / den;  // truncates toward zero
  if (num < 0 && f * den != num) f -= 1;
  return f;
}

}  // namespace reslim
