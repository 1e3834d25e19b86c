#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "poincare/errors.hpp"

namespace poincare {

using BigInt = boost::multiprecision::mpz_int;

/// Exact rational scalar. Always stored in canonical form (reduced,
/// denominator > 0); every arithmetic operation is exact.
using Rational = boost::multiprecision::mpq_rational;

inline BigInt num(const Rational& q) { return numerator(q); }
inline BigInt den(const Rational& q) { return denominator(q); }

/// Parses "p/q" or "p" with optional sign. The (num, den) constructor
/// canonicalizes, which the mpq string constructor does not.
inline Rational parse_rational(std::string_view text) {
  const auto pos = text.find('/');
  try {
    if (pos == std::string_view::npos) {
      return Rational(BigInt(std::string(text)));
    }
    BigInt n{std::string(text.substr(0, pos))};
    BigInt d{std::string(text.substr(pos + 1))};
    if (d == 0) throw ConfigError("rational with zero denominator: " + std::string(text));
    return Rational(n, d);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse rational: " + std::string(text));
  }
}

/// Formats canonically as "p/q", or "p" when the denominator is 1.
inline std::string format_rational(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

template <class Real>
Real to_real(const Rational& q) {
  return q.convert_to<Real>();
}

inline Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational out = 1;
  Rational b = base;
  unsigned e = exponent;
  while (e != 0) {
    if (e & 1u) out *= b;
    b *= b;
    e >>= 1u;
  }
  return out;
}

inline BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Exact square root when the argument is a perfect square, std::nullopt-like
/// behaviour via a bool flag otherwise.
inline bool exact_sqrt(const BigInt& n, BigInt& root) {
  if (n < 0) return false;
  root = sqrt(n);
  return root * root == n;
}

inline bool exact_sqrt(const Rational& q, Rational& root) {
  BigInt rn, rd;
  if (!exact_sqrt(num(q), rn) || !exact_sqrt(den(q), rd)) return false;
  root = Rational(rn, rd);
  return true;
}

} // namespace poincare
