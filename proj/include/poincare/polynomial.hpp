#pragma once

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <utility>
#include <vector>

#include "poincare/multi_index.hpp"
#include "poincare/rational.hpp"

namespace poincare {

/// Sparse trivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in the canonical graded-lex order with no stored
/// zeros, so equal polynomials have identical representations and iteration
/// order is deterministic.
class Polynomial3 {
public:
  using Term = std::pair<MultiIndex, Rational>;

  Polynomial3() = default;

  static Polynomial3 constant(Rational c) {
    Polynomial3 f;
    if (c != 0) f.terms_.emplace_back(MultiIndex{}, std::move(c));
    return f;
  }

  static Polynomial3 monomial(MultiIndex m, Rational c) {
    Polynomial3 f;
    if (c != 0) f.terms_.emplace_back(m, std::move(c));
    return f;
  }

  /// x1, x2 or x3 for axis 0, 1, 2.
  static Polynomial3 variable(int axis) {
    return monomial(MultiIndex{}.incremented(axis), 1);
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Max total degree of stored terms; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.back().first.degree(); }

  Rational coefficient(MultiIndex m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, MultiIndex key) { return grlex_less(t.first, key); });
    if (it != terms_.end() && it->first == m) return it->second;
    return Rational(0);
  }

  Polynomial3& operator+=(const Polynomial3& other) {
    *this = merged(*this, other, 1);
    return *this;
  }

  Polynomial3& operator-=(const Polynomial3& other) {
    *this = merged(*this, other, -1);
    return *this;
  }

  friend Polynomial3 operator+(const Polynomial3& a, const Polynomial3& b) { return merged(a, b, 1); }
  friend Polynomial3 operator-(const Polynomial3& a, const Polynomial3& b) { return merged(a, b, -1); }

  Polynomial3 operator-() const {
    Polynomial3 out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
  }

  Polynomial3& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.second *= c;
    }
    return *this;
  }

  friend Polynomial3 operator*(const Rational& c, Polynomial3 f) {
    f *= c;
    return f;
  }

  friend Polynomial3 operator*(Polynomial3 f, const Rational& c) {
    f *= c;
    return f;
  }

  friend Polynomial3 operator*(const Polynomial3& a, const Polynomial3& b) {
    if (a.is_zero() || b.is_zero()) return {};
    // accumulate into a sorted flat map
    std::vector<Term> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) acc.emplace_back(ma + mb, ca * cb);
    std::sort(acc.begin(), acc.end(),
              [](const Term& s, const Term& t) { return grlex_less(s.first, t.first); });
    Polynomial3 out;
    out.terms_.reserve(acc.size());
    for (auto& t : acc) {
      if (!out.terms_.empty() && out.terms_.back().first == t.first) {
        out.terms_.back().second += t.second;
        if (out.terms_.back().second == 0) out.terms_.pop_back();
      } else if (t.second != 0) {
        out.terms_.push_back(std::move(t));
      }
    }
    return out;
  }

  friend bool operator==(const Polynomial3& a, const Polynomial3& b) { return a.terms_ == b.terms_; }

  /// Exact partial derivative along axis 0, 1 or 2.
  Polynomial3 derivative(int axis) const {
    Polynomial3 out;
    out.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      const unsigned e = m[axis];
      if (e == 0) continue;
      out.terms_.emplace_back(m.decremented(axis), c * e);
    }
    // dropping one exponent preserves the canonical order within an axis,
    // but not across terms; restore it
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& s, const Term& t) { return grlex_less(s.first, t.first); });
    return out;
  }

  /// f(c1*x1, c2*x2, c3*x3): coefficient-wise scaling, exact.
  Polynomial3 scaled_axes(const Rational& c1, const Rational& c2, const Rational& c3) const {
    Polynomial3 out;
    out.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      Rational f = rational_pow(c1, m.p) * rational_pow(c2, m.q) * rational_pow(c3, m.r);
      f *= c;
      if (f != 0) out.terms_.emplace_back(m, std::move(f));
    }
    return out;
  }

  template <class Real>
  Real evaluate(Real x1, Real x2, Real x3) const {
    Real acc = 0;
    for (const auto& [m, c] : terms_) {
      Real t = to_real<Real>(c);
      for (unsigned i = 0; i < m.p; ++i) t *= x1;
      for (unsigned i = 0; i < m.q; ++i) t *= x2;
      for (unsigned i = 0; i < m.r; ++i) t *= x3;
      acc += t;
    }
    return acc;
  }

  /// gcd of integer numerators over lcm of denominators; 0 for the zero
  /// polynomial. Dividing by the content yields coprime integer coefficients.
  Rational content() const {
    if (terms_.empty()) return Rational(0);
    BigInt g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
      g = gcd(g, num(c));
      l = lcm(l, den(c));
    }
    if (g < 0) g = -g;
    return Rational(g, l);
  }

  /// Divides by the content: integer coefficients with gcd 1, sign preserved.
  Polynomial3 primitive() const {
    if (terms_.empty()) return *this;
    Rational c = content();
    Polynomial3 out = *this;
    for (auto& t : out.terms_) t.second /= c;
    return out;
  }

  /// True iff `divisor` divides this polynomial exactly. Single-divisor
  /// reduction with respect to the canonical term order.
  bool divisible_by(const Polynomial3& divisor) const {
    assert(!divisor.is_zero());
    Polynomial3 rem = *this;
    const auto& lead = divisor.terms_.back();
    while (!rem.is_zero()) {
      // find the largest remaining term divisible by the divisor's lead
      bool reduced = false;
      for (auto it = rem.terms_.rbegin(); it != rem.terms_.rend(); ++it) {
        const MultiIndex m = it->first;
        if (m.p >= lead.first.p && m.q >= lead.first.q && m.r >= lead.first.r) {
          MultiIndex shift{std::uint16_t(m.p - lead.first.p), std::uint16_t(m.q - lead.first.q),
                           std::uint16_t(m.r - lead.first.r)};
          Polynomial3 factor = monomial(shift, it->second / lead.second);
          rem -= factor * divisor;
          reduced = true;
          break;
        }
      }
      if (!reduced) return false;
    }
    return true;
  }

private:
  static Polynomial3 merged(const Polynomial3& a, const Polynomial3& b, int sign) {
    Polynomial3 out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && grlex_less(ia->first, ib->first))) {
        out.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || grlex_less(ib->first, ia->first)) {
        out.terms_.emplace_back(ib->first, sign > 0 ? ib->second : -ib->second);
        ++ib;
      } else {
        Rational c = sign > 0 ? Rational(ia->second + ib->second)
                              : Rational(ia->second - ib->second);
        if (c != 0) out.terms_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  std::vector<Term> terms_;
};

} // namespace poincare
