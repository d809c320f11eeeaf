#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>
#include <type_traits>

#include "specamb/error.hpp"

namespace specamb {

/// Exact probability scalar for the rational backend. Arbitrary-precision
/// so products and ratios of masses never overflow or round.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class T>
inline constexpr bool is_exact_backend = std::is_same_v<T, Rational>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double v) { return v; }

namespace detail {

inline BigInt parse_bigint(std::string_view text) {
  if (text.empty()) fail(Errc::ParseError, "empty integer");
  std::size_t i = (text[0] == '+' || text[0] == '-') ? 1 : 0;
  if (i == text.size()) fail(Errc::ParseError, "sign without digits");
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      fail(Errc::ParseError, "invalid integer '" + std::string(text) + "'");
    }
  }
  return BigInt(std::string(text));
}

// Decimal literal with optional exponent, e.g. "0.375", "2.5e-3".
inline Rational parse_decimal(std::string_view text) {
  std::string_view mantissa = text;
  long long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_part = text.substr(e + 1);
    auto [ptr, ec] = std::from_chars(exp_part.data(),
                                     exp_part.data() + exp_part.size(), exponent);
    if (ec != std::errc{} || ptr != exp_part.data() + exp_part.size()) {
      fail(Errc::ParseError, "invalid exponent in '" + std::string(text) + "'");
    }
  }
  std::string digits;
  long long frac_digits = 0;
  bool seen_point = false;
  std::size_t i = 0;
  if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
    digits.push_back(mantissa[0]);
    i = 1;
  }
  bool any_digit = false;
  for (; i < mantissa.size(); ++i) {
    char c = mantissa[i];
    if (c == '.') {
      if (seen_point) fail(Errc::ParseError, "repeated '.' in '" + std::string(text) + "'");
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else {
      fail(Errc::ParseError, "invalid decimal '" + std::string(text) + "'");
    }
  }
  if (!any_digit) fail(Errc::ParseError, "no digits in '" + std::string(text) + "'");
  Rational value(parse_bigint(digits));
  long long scale = exponent - frac_digits;
  BigInt pow10 = boost::multiprecision::pow(BigInt(10),
                                            static_cast<unsigned>(scale < 0 ? -scale : scale));
  if (scale < 0) {
    value /= Rational(pow10);
  } else {
    value *= Rational(pow10);
  }
  return value;
}

}  // namespace detail

/// Parses "a/b", an integer, or a decimal literal (optionally with exponent)
/// into an exact rational.
inline Rational rational_from_string(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = detail::parse_bigint(text.substr(0, slash));
    BigInt den = detail::parse_bigint(text.substr(slash + 1));
    if (den == 0) fail(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (text.find('.') != std::string_view::npos ||
      text.find_first_of("eE") != std::string_view::npos) {
    return detail::parse_decimal(text);
  }
  return Rational(detail::parse_bigint(text));
}

/// Recovers the decimal a double stands for: shortest round-trip literal,
/// reparsed exactly. 0.1 becomes 1/10, 0.25 becomes 1/4.
inline Rational rational_from_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) fail(Errc::ParseError, "unrepresentable double");
  return detail::parse_decimal(std::string_view(buf, ptr - buf));
}

/// Canonical text form: "n" for integers, "n/d" otherwise (lowest terms).
inline std::string rational_to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace specamb
