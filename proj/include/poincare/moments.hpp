#pragma once

#include <vector>

#include "poincare/geometry.hpp"
#include "poincare/multi_index.hpp"
#include "poincare/polynomial.hpp"
#include "poincare/rational.hpp"
#include "poincare/vector_field.hpp"

namespace poincare {

/// Unit-ball monomial moment: returns M with
///   integral over the unit ball of x1^p x2^q x3^r = M * pi.
/// Zero whenever any exponent is odd; for p=2u, q=2v, r=2w and s=u+v+w,
///   M = 16 (2u)! (2v)! (2w)! (s+2)! / (u! v! w! (2s+4)!).
inline Rational ball_moment(int p, int q, int r) {
  if (p < 0 || q < 0 || r < 0) throw ConfigError("ball_moment: negative exponent");
  if (p % 2 || q % 2 || r % 2) return Rational(0);
  const unsigned u = unsigned(p) / 2, v = unsigned(q) / 2, w = unsigned(r) / 2;
  const unsigned s = u + v + w;
  BigInt numerator = 16 * factorial(2 * u) * factorial(2 * v) * factorial(2 * w) * factorial(s + 2);
  BigInt denominator = factorial(u) * factorial(v) * factorial(w) * factorial(2 * s + 4);
  return Rational(numerator, denominator);
}

inline Rational ball_moment(MultiIndex m) { return ball_moment(m.p, m.q, m.r); }

/// Ellipsoid monomial moment in reduced units:
///   integral over E of x1^p x2^q x3^r = (reduced value) * pi * a1*a2*a3,
/// where a_i are the semi-axes. Only even-exponent monomials survive, so the
/// reduced value is always rational:
///   reduced = ball_moment(p,q,r) / (A1^u A2^v A3^w).
/// The common factor pi*a1*a2*a3 is constant per ellipsoid and cancels in
/// generalized eigenproblems, Gram projections, ranks and zero-tests.
inline Rational ellipsoid_moment_reduced(const Ellipsoid& e, int p, int q, int r) {
  Rational m = ball_moment(p, q, r);
  if (m == 0) return m;
  m /= rational_pow(e.coefficient(0), unsigned(p) / 2);
  m /= rational_pow(e.coefficient(1), unsigned(q) / 2);
  m /= rational_pow(e.coefficient(2), unsigned(r) / 2);
  return m;
}

/// Ellipsoid moment divided by pi; requires rational semi-axes.
inline Rational ellipsoid_moment_over_pi(const Ellipsoid& e, int p, int q, int r) {
  return ellipsoid_moment_reduced(e, p, q, r) * e.axis_volume_factor();
}

/// Precomputed scaled integer moments of one ellipsoid up to a fixed degree.
///
/// scaled(m) = reduced_moment(m) * denominator(), an integer; inner products
/// accumulate in pure integer arithmetic and divide by denominator() once.
class MomentTable {
public:
  MomentTable(const Ellipsoid& e, int max_degree) : ellipsoid_(e), max_degree_(max_degree) {
    const auto monos = monomials_up_to(max_degree);
    std::vector<Rational> reduced(monos.size());
    denominator_ = 1;
    for (std::size_t i = 0; i < monos.size(); ++i) {
      reduced[i] = ellipsoid_moment_reduced(e, monos[i].p, monos[i].q, monos[i].r);
      denominator_ = lcm(denominator_, den(reduced[i]));
    }
    scaled_.resize(monos.size());
    for (std::size_t i = 0; i < monos.size(); ++i)
      scaled_[i] = num(reduced[i]) * (denominator_ / den(reduced[i]));
  }

  const Ellipsoid& ellipsoid() const { return ellipsoid_; }
  int max_degree() const { return max_degree_; }
  const BigInt& denominator() const { return denominator_; }

  const BigInt& scaled(MultiIndex m) const {
    if (m.degree() > max_degree_)
      throw DimensionMismatch("MomentTable: degree exceeds the precomputed range");
    return scaled_[grlex_rank(m)];
  }

  Rational reduced(MultiIndex m) const { return Rational(scaled(m), denominator_); }

private:
  Ellipsoid ellipsoid_;
  int max_degree_;
  BigInt denominator_;
  std::vector<BigInt> scaled_;
};

/// Exact L2(E) inner product of two polynomials, in reduced units
/// (value * pi * a1*a2*a3 is the true integral).
inline Rational inner_product_reduced(const MomentTable& table, const Polynomial3& f,
                                      const Polynomial3& g) {
  Rational total = 0;
  for (const auto& [mf, cf] : f.terms()) {
    Rational inner = 0;
    for (const auto& [mg, cg] : g.terms()) {
      // only matching parity classes give even exponents throughout
      if (mf.parity() != mg.parity()) continue;
      inner += cg * Rational(table.scaled(mf + mg), 1);
    }
    total += cf * inner;
  }
  return total / Rational(table.denominator(), 1);
}

/// Exact E-inner product of two vector fields, reduced units.
inline Rational inner_product_reduced(const MomentTable& table, const VectorField& u,
                                      const VectorField& v) {
  Rational total = 0;
  for (int c = 0; c < 3; ++c) {
    for (const auto& [mu, cu] : u[c].terms()) {
      Rational inner = 0;
      for (const auto& [mv, cv] : v[c].terms()) {
        if (mu.parity() != mv.parity()) continue;
        inner += cv * Rational(table.scaled(mu + mv), 1);
      }
      total += cu * inner;
    }
  }
  return total / Rational(table.denominator(), 1);
}

/// Integer fast path for content-primitive fields: the accumulation runs
/// entirely over the integers and reduces once. Throws when a coefficient is
/// not an integer.
inline Rational moment_dot_integer(const MomentTable& table, const VectorField& u,
                                   const VectorField& v) {
  for (int c = 0; c < 3; ++c) {
    for (const auto& [m, coeff] : u[c].terms())
      if (den(coeff) != 1)
        throw DimensionMismatch("moment_dot_integer: expects integer coefficients");
    for (const auto& [m, coeff] : v[c].terms())
      if (den(coeff) != 1)
        throw DimensionMismatch("moment_dot_integer: expects integer coefficients");
  }
  BigInt acc = 0;
  for (int c = 0; c < 3; ++c) {
    for (const auto& [mu, cu] : u[c].terms()) {
      BigInt inner = 0;
      for (const auto& [mv, cv] : v[c].terms()) {
        if (mu.parity() != mv.parity()) continue;
        inner += num(cv) * table.scaled(mu + mv);
      }
      if (inner != 0) acc += num(cu) * inner;
    }
  }
  return Rational(acc, table.denominator());
}

/// Convenience overloads constructing a throwaway table.
inline Rational inner_product_reduced(const Ellipsoid& e, const VectorField& u,
                                      const VectorField& v) {
  const int d = std::max(0, u.degree()) + std::max(0, v.degree());
  return inner_product_reduced(MomentTable(e, d), u, v);
}

/// Inner product divided by pi; requires rational semi-axes.
inline Rational inner_product_over_pi(const Ellipsoid& e, const VectorField& u,
                                      const VectorField& v) {
  return inner_product_reduced(e, u, v) * e.axis_volume_factor();
}

} // namespace poincare
