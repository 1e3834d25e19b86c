#pragma once

#include <array>

#include "poincare/polynomial.hpp"

namespace poincare {

/// Polynomial vector field (v1, v2, v3).
class VectorField {
public:
  VectorField() = default;
  VectorField(Polynomial3 v1, Polynomial3 v2, Polynomial3 v3)
      : c_{std::move(v1), std::move(v2), std::move(v3)} {}

  const Polynomial3& operator[](int axis) const { return c_[std::size_t(axis)]; }
  Polynomial3& operator[](int axis) { return c_[std::size_t(axis)]; }

  bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero(); }

  int degree() const {
    return std::max(c_[0].degree(), std::max(c_[1].degree(), c_[2].degree()));
  }

  std::size_t term_count() const {
    return c_[0].term_count() + c_[1].term_count() + c_[2].term_count();
  }

  VectorField& operator+=(const VectorField& o) {
    for (int i = 0; i < 3; ++i) c_[std::size_t(i)] += o[i];
    return *this;
  }

  VectorField& operator-=(const VectorField& o) {
    for (int i = 0; i < 3; ++i) c_[std::size_t(i)] -= o[i];
    return *this;
  }

  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }

  friend VectorField operator*(const Rational& s, VectorField v) {
    for (int i = 0; i < 3; ++i) v[i] *= s;
    return v;
  }

  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.c_[0] == b.c_[0] && a.c_[1] == b.c_[1] && a.c_[2] == b.c_[2];
  }

  Rational content() const {
    // gcd of the three component contents
    Rational g = 0;
    for (int i = 0; i < 3; ++i) {
      const Rational ci = c_[std::size_t(i)].content();
      if (ci == 0) continue;
      if (g == 0) {
        g = ci;
      } else {
        g = Rational(gcd(num(g), num(ci)), lcm(den(g), den(ci)));
      }
    }
    return g;
  }

  /// Content-primitive form: integer coefficients with overall gcd 1.
  VectorField primitive() const {
    Rational g = content();
    if (g == 0 || g == 1) return *this;
    VectorField out = *this;
    const Rational inv = 1 / g;
    for (int i = 0; i < 3; ++i) out[i] *= inv;
    return out;
  }

  template <class Real>
  std::array<Real, 3> evaluate(Real x1, Real x2, Real x3) const {
    return {c_[0].evaluate(x1, x2, x3), c_[1].evaluate(x1, x2, x3), c_[2].evaluate(x1, x2, x3)};
  }

private:
  std::array<Polynomial3, 3> c_{};
};

inline Polynomial3 divergence(const VectorField& v) {
  return v[0].derivative(0) + v[1].derivative(1) + v[2].derivative(2);
}

inline VectorField gradient(const Polynomial3& f) {
  return VectorField(f.derivative(0), f.derivative(1), f.derivative(2));
}

inline VectorField curl(const VectorField& v) {
  return VectorField(v[2].derivative(1) - v[1].derivative(2),
                     v[0].derivative(2) - v[2].derivative(0),
                     v[1].derivative(0) - v[0].derivative(1));
}

/// Cross product of a constant rational vector with a polynomial field.
inline VectorField cross(const std::array<Rational, 3>& w, const VectorField& v) {
  return VectorField(w[1] * v[2] - w[2] * v[1],
                     w[2] * v[0] - w[0] * v[2],
                     w[0] * v[1] - w[1] * v[0]);
}

/// Cross product with the unit axis vector e_axis.
inline VectorField cross_axis(const VectorField& v, int axis) {
  std::array<Rational, 3> e{0, 0, 0};
  e[std::size_t(axis)] = 1;
  // v x e = -(e x v)
  VectorField out = cross(e, v);
  for (int i = 0; i < 3; ++i) out[i] *= -1;
  return out;
}

inline Polynomial3 dot(const VectorField& a, const VectorField& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

} // namespace poincare
