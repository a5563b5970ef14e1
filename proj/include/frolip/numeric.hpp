#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "frolip/errors.hpp"

namespace frolip {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
// Roughly 210 bits of mantissa; used where irrational thresholds meet exact data.
using HighFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<64>>;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

inline BigInt floor_of(const Rational& r) {
  BigInt n = numerator_of(r);
  BigInt d = denominator_of(r);
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

inline BigInt ceil_of(const Rational& r) { return -floor_of(Rational(-r)); }

namespace detail {

inline bool parse_integer(std::string_view text, BigInt& out) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) return false;
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) return false;
  out = BigInt(std::string(text.substr(i)));
  if (negative) out = -out;
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

// Parses "p/q" or "p" exactly. Throws ParseError on anything else, including q = 0.
inline Rational parse_rational(std::string_view text) {
  const std::string_view t = detail::trim(text);
  const auto slash = t.find('/');
  BigInt num;
  BigInt den = 1;
  if (slash == std::string_view::npos) {
    if (!detail::parse_integer(t, num)) throw ParseError("not a rational: \"" + std::string(text) + "\"");
  } else {
    if (!detail::parse_integer(t.substr(0, slash), num) ||
        !detail::parse_integer(t.substr(slash + 1), den))
      throw ParseError("not a rational: \"" + std::string(text) + "\"");
    if (den == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  }
  return Rational(num, den);
}

inline std::string to_string(const BigInt& n) { return n.str(); }

// "p/q" in lowest terms, or "p" for integers.
inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

// Natural log of a positive big integer; relative error well below 1e-12.
inline double log_bigint(const BigInt& n) {
  if (n <= 0) throw DomainError("LogOfNonPositive", "log of non-positive integer");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, n.backend().data());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

inline double log_rational(const Rational& r) {
  return log_bigint(numerator_of(r)) - log_bigint(denominator_of(r));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline HighFloat to_high(const Rational& r) {
  return HighFloat(numerator_of(r)) / HighFloat(denominator_of(r));
}

// Exact value of a double.
inline Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("NonFinite", "non-finite coordinate");
  Rational r;
  mpq_set_d(r.backend().data(), x);
  return r;
}

// Nearest rational with denominator 2^48; the snapping used for floating query points.
inline Rational snap_rational(double x) {
  static const BigInt scale = BigInt(1) << 48;
  const Rational scaled = exact_rational(x) * Rational(scale);
  return Rational(floor_of(scaled + Rational(1, 2)), scale);
}

inline std::vector<Rational> snap_rational(const std::vector<double>& xs) {
  std::vector<Rational> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(snap_rational(x));
  return out;
}

inline std::int64_t to_int64(const BigInt& n) {
  if (n > BigInt(INT64_MAX) || n < BigInt(INT64_MIN))
    throw ResourceLimit("integer " + n.str() + " exceeds 64-bit range");
  return n.convert_to<std::int64_t>();
}

}  // namespace frolip
