#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "poincare/errors.hpp"
#include "poincare/geometry.hpp"
#include "poincare/moments.hpp"
#include "poincare/rational_linalg.hpp"
#include "poincare/vector_field.hpp"

namespace poincare {

/// dim of the divergence-free boundary-tangent polynomial fields of degree <= n.
constexpr std::size_t dim_vn0(int n) {
  return n <= 0 ? 0 : std::size_t(n) * std::size_t(n + 1) * std::size_t(2 * n + 7) / 6;
}

/// dim of the degree-n orthogonal increment block.
constexpr std::size_t dim_wn(int n) { return n <= 0 ? 0 : std::size_t(n) * std::size_t(n + 2); }

struct BasisElement {
  VectorField field; // content-primitive
  int degree = 0;    // exact polynomial degree of the field
};

/// Ordered basis of V_n^0 for one ellipsoid.
struct BasisSet {
  Ellipsoid ellipsoid;
  int degree = 0;
  std::vector<BasisElement> elements;

  std::size_t size() const { return elements.size(); }

  std::size_t count_with_degree(int d) const {
    std::size_t c = 0;
    for (const auto& e : elements)
      if (e.degree == d) ++c;
    return c;
  }
};

namespace detail {

/// Flat column index of (component, monomial) coefficients; valid for any degree.
inline std::size_t coefficient_column(int component, MultiIndex m) {
  return 3 * grlex_rank(m) + std::size_t(component);
}

inline SparseIntRow field_row(const VectorField& f) {
  SparseIntRow row;
  row.reserve(f.term_count());
  for (int c = 0; c < 3; ++c)
    for (const auto& [m, coeff] : f[c].terms()) {
      if (den(coeff) != 1)
        throw DimensionMismatch("field_row: expects a content-primitive field");
      row.push_back({coefficient_column(c, m), num(coeff)});
    }
  std::sort(row.begin(), row.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  return row;
}

/// One generator grad(phi * F) x e_dir, content-primitive.
inline VectorField curl_generator(const Polynomial3& quadric, MultiIndex phi, int dir) {
  const Polynomial3 phi_f = Polynomial3::monomial(phi, 1) * quadric;
  return cross_axis(gradient(phi_f), dir).primitive();
}

} // namespace detail

/// The overcomplete generating family of V_n^0: grad(phi*F) x e_i for phi a
/// monomial of degree <= n-1, in the canonical scan order (direction-major,
/// graded-lex monomials within each direction). Every member is
/// divergence-free and tangent to the boundary by construction; the family
/// spans V_n^0 but is overcomplete for n >= 2.
inline std::vector<VectorField> spanning_fields(const Ellipsoid& e, int n) {
  if (n < 1) throw ConfigError("spanning_fields: n must be >= 1");
  const Polynomial3 f = e.quadric();
  std::vector<VectorField> out;
  const auto monos = monomials_up_to(n - 1);
  out.reserve(3 * monos.size());
  for (int dir = 0; dir < 3; ++dir)
    for (const auto phi : monos) out.push_back(detail::curl_generator(f, phi, dir));
  return out;
}

/// Generators whose fields have exact degree k (deg phi = k-1),
/// direction-major within the degree slice.
inline std::vector<VectorField> degree_slice_fields(const Ellipsoid& e, int k) {
  const Polynomial3 f = e.quadric();
  std::vector<VectorField> out;
  const auto monos = monomials_of_degree(k - 1);
  out.reserve(3 * monos.size());
  for (int dir = 0; dir < 3; ++dir)
    for (const auto phi : monos) out.push_back(detail::curl_generator(f, phi, dir));
  return out;
}

/// Greedy rank filtering in the given order: a field is kept iff it strictly
/// increases the rank of the coefficient matrix over Q. Throws
/// DimensionMismatch when the kept count differs from n(n+1)(2n+7)/6.
inline BasisSet select_basis(const Ellipsoid& e, const std::vector<VectorField>& fields, int n) {
  SparseIntRankFilter filter;
  BasisSet basis{e, n, {}};
  for (const auto& f : fields) {
    if (f.is_zero()) continue;
    if (filter.add_row(detail::field_row(f))) basis.elements.push_back({f, f.degree()});
  }
  if (basis.size() != dim_vn0(n))
    throw DimensionMismatch("select_basis: kept " + std::to_string(basis.size()) +
                            " fields, expected " + std::to_string(dim_vn0(n)));
  return basis;
}

inline BasisSet select_basis(const Ellipsoid& e, int n) {
  return select_basis(e, spanning_fields(e, n), n);
}

/// Degree-graded construction: extends the degree k-1 basis with the exact
/// degree-k slice for k = 1..n. The result is stratified — exactly k(k+2)
/// elements of each exact degree k — which the per-degree block machinery
/// requires.
inline BasisSet graded_basis(const Ellipsoid& e, int n) {
  if (n < 1) throw ConfigError("graded_basis: n must be >= 1");
  SparseIntRankFilter filter;
  BasisSet basis{e, n, {}};
  for (int k = 1; k <= n; ++k) {
    std::size_t kept = 0;
    for (const auto& f : degree_slice_fields(e, k)) {
      if (filter.add_row(detail::field_row(f))) {
        basis.elements.push_back({f, k});
        ++kept;
      }
    }
    if (kept != dim_wn(k))
      throw DimensionMismatch("graded_basis: degree " + std::to_string(k) + " kept " +
                              std::to_string(kept) + " fields, expected " +
                              std::to_string(dim_wn(k)));
  }
  return basis;
}

struct FieldCheck {
  bool divergence_free = false;
  bool tangent = false;
  bool pass() const { return divergence_free && tangent; }
};

/// Exact membership test for V^0: divergence vanishes identically and the
/// quadric divides <v, grad F>, which is equivalent to tangency on the
/// boundary since F is irreducible.
inline FieldCheck verify_field(const Ellipsoid& e, const VectorField& v) {
  FieldCheck check;
  check.divergence_free = divergence(v).is_zero();
  const Polynomial3 f = e.quadric();
  check.tangent = dot(v, gradient(f)).divisible_by(f);
  return check;
}

/// Exact orthogonality of the basis to all gradient fields grad(phi) with
/// deg phi <= n+1, plus the dimension identity
/// 3*dim P_n = N + (dim P_{n+1} - 1).
inline bool gradient_complement_check(const Ellipsoid& e, const BasisSet& basis) {
  const int n = basis.degree;
  if (3 * dim_polynomials(n) != basis.size() + dim_polynomials(n + 1) - 1) return false;
  MomentTable table(e, 2 * n + 2);
  for (const auto& phi : monomials_up_to(n + 1)) {
    if (phi.degree() == 0) continue;
    const VectorField grad_phi = gradient(Polynomial3::monomial(phi, 1));
    for (const auto& el : basis.elements) {
      if (inner_product_reduced(table, el.field, grad_phi) != 0) return false;
    }
  }
  return true;
}

} // namespace poincare
