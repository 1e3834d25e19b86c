#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poincare/block_basis.hpp"
#include "poincare/errors.hpp"
#include "poincare/pencil.hpp"
#include "poincare/rational_linalg.hpp"

namespace poincare {

/// Tilted quadric normal form for the geostrophic analysis:
/// E = { A x1^2 + B x2^2 + x3^2 + 2C x1 x3 + 2D x2 x3 <= 1 }, Omega = (0,0,1).
struct GeneralQuadric {
  Rational a, b, c, d;

  GeneralQuadric(Rational A, Rational B, Rational C, Rational D)
      : a(std::move(A)), b(std::move(B)), c(std::move(C)), d(std::move(D)) {
    if (a <= 0 || b <= 0 || delta() <= 0)
      throw DegenerateQuadric("quadric form is not positive definite");
  }

  /// delta = AB - BC^2 - AD^2, the determinant of the quadratic form.
  Rational delta() const { return a * b - b * c * c - a * d * d; }
};

/// Axis-aligned ellipsoid with Omega on the x3 axis, rescaled so the x3^2
/// coefficient is 1.
inline GeneralQuadric quadric_from_axis_aligned(const Ellipsoid& e) {
  return GeneralQuadric(e.coefficient(0) / e.coefficient(2), e.coefficient(1) / e.coefficient(2),
                        0, 0);
}

/// First-order operator V = (M x) . grad on the plane, with trace(M) = 0 and
/// det(M) = delta > 0; geostrophic pressures are exactly its invariants.
struct PlanarOperator {
  RationalMatrix m; // 2 x 2

  Rational determinant() const { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }
};

inline PlanarOperator v_operator(const GeneralQuadric& q) {
  PlanarOperator op{RationalMatrix(2, 2)};
  op.m(0, 0) = q.c * q.d;
  op.m(0, 1) = -(q.b - q.d * q.d);
  op.m(1, 0) = q.a - q.c * q.c;
  op.m(1, 1) = -q.c * q.d;
  if (op.m(0, 0) + op.m(1, 1) != 0)
    throw InvariantViolation("planar operator must be trace-free");
  if (op.determinant() != q.delta())
    throw InvariantViolation("planar operator determinant must equal delta");
  return op;
}

/// The unique (up to dilation) symmetric form S with S M + M^T S = 0,
/// normalized so its first nonzero entry is 1; returned positive definite.
/// Verifies V(x^T S x) = 0 exactly as polynomials.
inline RationalMatrix invariant_quadratic(const PlanarOperator& op) {
  if (op.determinant() <= 0)
    throw DegenerateQuadric("invariant_quadratic: requires det(M) > 0");
  const Rational m11 = op.m(0, 0), m12 = op.m(0, 1), m21 = op.m(1, 0), m22 = op.m(1, 1);
  // unknowns (s11, s12, s22)
  RationalMatrix sys(3, 3);
  sys(0, 0) = 2 * m11; sys(0, 1) = 2 * m21; sys(0, 2) = 0;
  sys(1, 0) = 0;       sys(1, 1) = 2 * m12; sys(1, 2) = 2 * m22;
  sys(2, 0) = m12;     sys(2, 1) = m11 + m22; sys(2, 2) = m21;
  const auto kernel = kernel_basis(sys);
  if (kernel.size() != 1)
    throw NonUniqueInvariant("invariant quadratic solution space has dimension " +
                             std::to_string(kernel.size()));
  RationalVector s = kernel.front();
  Rational lead = 0;
  for (const auto& x : s)
    if (x != 0) { lead = x; break; }
  for (auto& x : s) x /= lead;
  RationalMatrix out(2, 2);
  out(0, 0) = s[0];
  out(0, 1) = out(1, 0) = s[1];
  out(1, 1) = s[2];
  if (!(out(0, 0) > 0) || !(out(0, 0) * out(1, 1) - out(0, 1) * out(1, 0) > 0))
    throw NonUniqueInvariant("invariant quadratic is not positive definite");

  // exact polynomial check V(x^T S x) == 0
  const Polynomial3 x1 = Polynomial3::variable(0), x2 = Polynomial3::variable(1);
  const Polynomial3 q = out(0, 0) * (x1 * x1) + (2 * out(0, 1)) * (x1 * x2) + out(1, 1) * (x2 * x2);
  const Polynomial3 vq = (m11 * x1 + m12 * x2) * q.derivative(0) +
                         (m21 * x1 + m22 * x2) * q.derivative(1);
  if (!vq.is_zero()) throw InvariantViolation("V(Q) must vanish identically");
  return out;
}

/// No nonzero linear form is annihilated by V: equivalent to full rank of M.
inline bool annihilates_no_linear_form(const PlanarOperator& op) {
  return rank(op.m) == 2;
}

/// Exact kernel dimension of the Coriolis block: the geostrophic mode count
/// of the degree block (lambda = 0 iff A alpha = 0 since B is definite).
inline std::size_t geostrophic_count(const SpectralPencil& pencil) {
  return pencil.size() - rank(pencil.coriolis);
}

inline std::size_t geostrophic_count(const BasisStack& stack, const RotationVector& omega,
                                     int n) {
  return geostrophic_count(assemble_block(stack, n, omega));
}

/// Exact geostrophic fields of one degree block, assembled over Q from the
/// null space of the Coriolis matrix.
inline std::vector<VectorField> geostrophic_kernel_fields(const BasisStack& stack,
                                                          const SpectralPencil& pencil) {
  const auto& blk = stack.block(pencil.degree);
  std::vector<VectorField> fields;
  for (const auto& alpha : kernel_basis(pencil.coriolis)) {
    VectorField v;
    for (std::size_t j = 0; j < blk.size(); ++j)
      if (alpha[j] != 0) v += alpha[j] * blk.fields[j];
    fields.push_back(std::move(v));
  }
  return fields;
}

/// Exact rotation-axis invariance (the kernel fields are independent of the
/// coordinate along Omega): (Omega . grad) v = 0 componentwise.
inline bool is_axis_invariant(const RotationVector& omega, const VectorField& v) {
  for (int comp = 0; comp < 3; ++comp) {
    Polynomial3 directional;
    for (int i = 0; i < 3; ++i)
      directional += omega.component(i) * v[comp].derivative(i);
    if (!directional.is_zero()) return false;
  }
  return true;
}

} // namespace poincare
