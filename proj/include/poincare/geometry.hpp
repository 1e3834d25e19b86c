#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>

#include "poincare/errors.hpp"
#include "poincare/polynomial.hpp"
#include "poincare/rational.hpp"
#include "poincare/vector_field.hpp"

namespace poincare {

/// Axis-aligned ellipsoid A1*x1^2 + A2*x2^2 + A3*x3^2 <= 1 with exact
/// rational coefficients. When every A_i is a perfect rational square the
/// semi-axes a_i = A_i^{-1/2} are stored exactly as well; otherwise they are
/// only available as doubles and exact integrals carry the common symbolic
/// factor a1*a2*a3 (see moments.hpp).
class Ellipsoid {
public:
  static Ellipsoid from_semi_axes(const Rational& a1, const Rational& a2, const Rational& a3) {
    if (a1 <= 0 || a2 <= 0 || a3 <= 0) throw ConfigError("semi-axes must be positive");
    Ellipsoid e;
    e.coeff_ = {1 / (a1 * a1), 1 / (a2 * a2), 1 / (a3 * a3)};
    e.axes_ = std::array<Rational, 3>{a1, a2, a3};
    return e;
  }

  static Ellipsoid from_coefficients(const Rational& A1, const Rational& A2, const Rational& A3) {
    if (A1 <= 0 || A2 <= 0 || A3 <= 0) throw ConfigError("quadric coefficients must be positive");
    Ellipsoid e;
    e.coeff_ = {A1, A2, A3};
    std::array<Rational, 3> ax;
    bool exact = true;
    for (int i = 0; i < 3 && exact; ++i) {
      Rational root;
      exact = exact_sqrt(e.coeff_[std::size_t(i)], root);
      if (exact) ax[std::size_t(i)] = 1 / root;
    }
    if (exact) e.axes_ = ax;
    return e;
  }

  static Ellipsoid unit_ball() { return from_semi_axes(1, 1, 1); }

  const Rational& coefficient(int i) const { return coeff_[std::size_t(i)]; }

  /// Exact semi-axes, present iff every A_i is a perfect rational square.
  const std::optional<std::array<Rational, 3>>& semi_axes() const { return axes_; }

  /// a1*a2*a3, exact; only when the semi-axes are rational.
  Rational axis_volume_factor() const {
    if (!axes_) throw ConfigError("semi-axes are not rational for this ellipsoid");
    return (*axes_)[0] * (*axes_)[1] * (*axes_)[2];
  }

  bool is_ball() const { return coeff_[0] == coeff_[1] && coeff_[1] == coeff_[2]; }

  double coefficient_double(int i) const { return to_double(coeff_[std::size_t(i)]); }
  double semi_axis_double(int i) const { return 1.0 / std::sqrt(coefficient_double(i)); }

  /// Defining quadric F = 1 - A1*x1^2 - A2*x2^2 - A3*x3^2 (positive inside).
  Polynomial3 quadric() const {
    Polynomial3 f = Polynomial3::constant(1);
    for (int i = 0; i < 3; ++i) {
      MultiIndex m{};
      m = m.incremented(i).incremented(i);
      f += Polynomial3::monomial(m, -coeff_[std::size_t(i)]);
    }
    return f;
  }

  VectorField quadric_gradient() const { return gradient(quadric()); }

  template <class Real>
  Real quadric_value(Real x1, Real x2, Real x3) const {
    return Real(1) - to_real<Real>(coeff_[0]) * x1 * x1 - to_real<Real>(coeff_[1]) * x2 * x2 -
           to_real<Real>(coeff_[2]) * x3 * x3;
  }

private:
  Ellipsoid() = default;
  std::array<Rational, 3> coeff_{};
  std::optional<std::array<Rational, 3>> axes_;
};

/// Constant rotation vector with exact rational components.
class RotationVector {
public:
  RotationVector(const Rational& w1, const Rational& w2, const Rational& w3) : omega_{w1, w2, w3} {
    omega_sq_ = w1 * w1 + w2 * w2 + w3 * w3;
    if (omega_sq_ == 0) throw ConfigError("rotation vector must be nonzero");
  }

  static RotationVector axis_z() { return RotationVector(0, 0, 1); }

  const Rational& component(int i) const { return omega_[std::size_t(i)]; }
  const std::array<Rational, 3>& components() const { return omega_; }

  /// ||Omega||^2, exact.
  const Rational& norm_squared() const { return omega_sq_; }

  /// ||Omega|| as a double (may be irrational).
  double norm() const { return std::sqrt(to_double(omega_sq_)); }

  std::array<double, 3> unit() const {
    const double w = norm();
    return {to_double(omega_[0]) / w, to_double(omega_[1]) / w, to_double(omega_[2]) / w};
  }

  bool is_axis_aligned(int axis) const {
    for (int i = 0; i < 3; ++i)
      if (i != axis && omega_[std::size_t(i)] != 0) return false;
    return true;
  }

  /// Omega = vec / denom with integer vec; keeps cross products in integer
  /// arithmetic.
  std::pair<std::array<BigInt, 3>, BigInt> integerized() const {
    BigInt q = lcm(lcm(den(omega_[0]), den(omega_[1])), den(omega_[2]));
    std::array<BigInt, 3> vec;
    for (int i = 0; i < 3; ++i) {
      const auto& w = omega_[std::size_t(i)];
      vec[std::size_t(i)] = num(w) * (q / den(w));
    }
    return {vec, q};
  }

private:
  std::array<Rational, 3> omega_;
  Rational omega_sq_;
};

inline VectorField cross(const RotationVector& w, const VectorField& v) {
  return cross(w.components(), v);
}

} // namespace poincare
