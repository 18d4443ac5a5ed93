#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdio>
#include <string>

#include "momentlab/errors.hpp"

namespace momentlab {

// Exact arbitrary-precision rational scalar. The backend keeps values in
// canonical reduced form with a positive denominator, so equality is plain
// value equality and arithmetic never rounds.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

using BigInt = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_int_backend<>,
    boost::multiprecision::et_off>;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw domain_error("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
inline std::string to_string(const Rational& r) { return r.str(); }

// Accepts "p", "p/q", and plain signed integers. Whitespace is not allowed.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw domain_error("empty rational literal");
  try {
    Rational r(text);
    return r;
  } catch (const std::exception&) {
    throw domain_error("malformed rational literal: '" + text + "'");
  }
}

inline double to_double(const Rational& r) { return static_cast<double>(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// x^e for integer e; e < 0 requires x != 0.
inline Rational pow_rational(const Rational& x, long long e) {
  if (e < 0) {
    if (x == 0) throw domain_error("zero to a negative power");
    return Rational(1) / pow_rational(x, -e);
  }
  Rational acc(1);
  Rational base = x;
  unsigned long long n = static_cast<unsigned long long>(e);
  while (n > 0) {
    if (n & 1ull) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

inline Rational abs_rational(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// Exact binomial coefficient; zero outside the Pascal triangle.
inline Rational binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  if (k > n - k) k = n - k;
  BigInt acc(1);
  for (long long i = 1; i <= k; ++i) {
    acc *= BigInt(n - k + i);
    acc /= BigInt(i);
  }
  return Rational(acc);
}

// Decimal rendering with 17 significant digits, used by the CLI's --float mode.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace momentlab
