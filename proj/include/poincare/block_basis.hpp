#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "poincare/basis.hpp"
#include "poincare/errors.hpp"
#include "poincare/moments.hpp"
#include "poincare/parallel.hpp"
#include "poincare/rational_linalg.hpp"

namespace poincare {

/// Exact representatives of the degree-n orthogonal increment block W_n,
/// stored content-primitive: fields[i] = scales[i] * (raw[i] - proj), where
/// proj is the exact Gram projection onto the degree n-1 space and
/// scales[i] > 0. Every field is exactly orthogonal to the lower space, so
/// inner products against the sparse raw elements recover the Gram matrix:
/// <w_i, w_j> = scales[i] * <w_j, raw_i>.
struct BlockBasis {
  int degree = 0;
  std::vector<VectorField> fields;
  std::vector<VectorField> raw;
  std::vector<Rational> scales;
  RationalMatrix gram; // exact Gram of `fields`, reduced units (see moments.hpp)
  std::shared_ptr<const RationalLU> gram_lu;

  std::size_t size() const { return fields.size(); }
};

namespace detail {

inline std::vector<BigInt> to_dense_coefficients(const VectorField& f, int max_degree) {
  std::vector<BigInt> dense(3 * dim_polynomials(max_degree));
  for (int c = 0; c < 3; ++c)
    for (const auto& [m, coeff] : f[c].terms()) dense[coefficient_column(c, m)] = num(coeff);
  return dense;
}

/// Builds the primitive field and reports the content divided out.
inline std::pair<VectorField, BigInt> from_dense_coefficients(const std::vector<BigInt>& dense,
                                                              int max_degree) {
  BigInt g = 0;
  for (const auto& x : dense) g = gcd(g, x);
  if (g == 0) return {VectorField{}, BigInt(1)};
  VectorField out;
  const auto monos = monomials_up_to(max_degree);
  for (int c = 0; c < 3; ++c) {
    Polynomial3 comp;
    for (const auto m : monos) {
      const BigInt& x = dense[coefficient_column(c, m)];
      if (x != 0) comp += Polynomial3::monomial(m, Rational(x / g, 1));
    }
    out[c] = std::move(comp);
  }
  return {std::move(out), std::move(g)};
}

} // namespace detail

/// Projects one exact-degree-n element against lower blocks that decompose
/// V_{n-1}^0 orthogonally. Returns the primitive representative and its
/// scale: field = scale * (e - proj).
inline std::pair<VectorField, Rational>
project_against_blocks(const MomentTable& table, const std::vector<BlockBasis>& lower_blocks,
                       const VectorField& e, int degree) {
  std::vector<RationalVector> coeffs(lower_blocks.size());
  BigInt common_den = 1;
  for (std::size_t b = 0; b < lower_blocks.size(); ++b) {
    const auto& blk = lower_blocks[b];
    RationalVector rhs(blk.size());
    for (std::size_t m = 0; m < blk.size(); ++m)
      rhs[m] = moment_dot_integer(table, blk.fields[m], e);
    coeffs[b] = blk.gram_lu->solve(rhs);
    for (const auto& c : coeffs[b]) common_den = lcm(common_den, den(c));
  }
  auto dense = detail::to_dense_coefficients(e, degree);
  for (auto& x : dense) x *= common_den;
  for (std::size_t b = 0; b < lower_blocks.size(); ++b) {
    const auto& blk = lower_blocks[b];
    for (std::size_t m = 0; m < blk.size(); ++m) {
      const Rational& c = coeffs[b][m];
      if (c == 0) continue;
      const BigInt scaled = num(c) * (common_den / den(c));
      const auto& w = blk.fields[m];
      for (int comp = 0; comp < 3; ++comp)
        for (const auto& [mono, coeff] : w[comp].terms())
          dense[detail::coefficient_column(comp, mono)] -= scaled * num(coeff);
    }
  }
  auto [field, content] = detail::from_dense_coefficients(dense, degree);
  return {std::move(field), Rational(common_den, content)};
}

namespace detail {

inline RationalMatrix block_gram(const MomentTable& table, const BlockBasis& blk) {
  const std::size_t d = blk.size();
  RationalMatrix gram(d, d);
  parallel_for(d * d, [&](std::size_t idx) {
    const std::size_t i = idx / d, j = idx % d;
    gram(i, j) = blk.scales[i] * moment_dot_integer(table, blk.fields[j], blk.raw[i]);
  });
  if (!gram.is_symmetric())
    throw InvariantViolation("block Gram matrix is not exactly symmetric");
  return gram;
}

inline void finalize_block(const MomentTable& table, BlockBasis& blk) {
  blk.gram = block_gram(table, blk);
  blk.gram_lu = std::make_shared<RationalLU>(blk.gram);
  if (blk.gram_lu->singular()) throw InvariantViolation("singular block Gram matrix");
}

} // namespace detail

/// Incremental per-degree basis builder. Block k holds the exact W_k
/// representatives; blocks are mutually orthogonal by construction, so the
/// projection onto V_{n-1}^0 decomposes into independent small Gram solves.
class BasisStack {
public:
  explicit BasisStack(Ellipsoid e) : ellipsoid_(std::move(e)) {}

  const Ellipsoid& ellipsoid() const { return ellipsoid_; }
  int max_degree() const { return int(blocks_.size()); }
  const BlockBasis& block(int k) const { return blocks_.at(std::size_t(k - 1)); }
  const std::vector<BlockBasis>& blocks() const { return blocks_; }

  const MomentTable& moments() const {
    if (!table_) throw DimensionMismatch("BasisStack: empty stack has no moment table");
    return *table_;
  }

  std::size_t dim_up_to(int n) const {
    std::size_t total = 0;
    for (int k = 1; k <= n; ++k) total += block(k).size();
    return total;
  }

  /// The raw (unprojected) stratified basis of V_n^0.
  BasisSet raw_basis(int n) const {
    BasisSet basis{ellipsoid_, n, {}};
    for (int k = 1; k <= n; ++k)
      for (const auto& f : block(k).raw) basis.elements.push_back({f, k});
    return basis;
  }

  void extend_to(int n) {
    if (n < 1) throw ConfigError("BasisStack: n must be >= 1");
    ensure_table(2 * n);
    for (int k = max_degree() + 1; k <= n; ++k) append_degree(k);
  }

private:
  void ensure_table(int degree) {
    if (!table_ || table_->max_degree() < degree)
      table_ = std::make_unique<MomentTable>(ellipsoid_, degree);
  }

  void append_degree(int k) {
    BlockBasis blk;
    blk.degree = k;
    for (const auto& f : degree_slice_fields(ellipsoid_, k))
      if (filter_.add_row(detail::field_row(f))) blk.raw.push_back(f);
    if (blk.raw.size() != dim_wn(k))
      throw DimensionMismatch("BasisStack: degree " + std::to_string(k) + " kept " +
                              std::to_string(blk.raw.size()) + " fields, expected " +
                              std::to_string(dim_wn(k)));
    blk.fields.resize(blk.raw.size());
    blk.scales.resize(blk.raw.size());
    parallel_for(blk.raw.size(), [&](std::size_t i) {
      auto [field, scale] = project_against_blocks(*table_, blocks_, blk.raw[i], k);
      blk.fields[i] = std::move(field);
      blk.scales[i] = std::move(scale);
    });
    detail::finalize_block(*table_, blk);
    blocks_.push_back(std::move(blk));
  }

  Ellipsoid ellipsoid_;
  std::unique_ptr<MomentTable> table_;
  SparseIntRankFilter filter_;
  std::vector<BlockBasis> blocks_;
};

/// Standalone block extraction from explicit degree n-1 and degree n bases:
/// projects each exact-degree-n element of `full` against the whole lower
/// space in one Gram solve. The stack-based path above is the fast route;
/// this one follows the flat definition and cross-checks it.
inline BlockBasis block_basis(const Ellipsoid& e, int n, const BasisSet& lower,
                              const BasisSet& full) {
  if (lower.degree != n - 1 || full.degree != n)
    throw DimensionMismatch("block_basis: bases must have degrees n-1 and n");
  std::vector<VectorField> top;
  for (const auto& el : full.elements)
    if (el.degree == n) top.push_back(el.field);
  if (top.size() != dim_wn(n))
    throw DimensionMismatch("block_basis: exact-degree-n element count " +
                            std::to_string(top.size()) + ", expected " +
                            std::to_string(dim_wn(n)));

  MomentTable table(e, 2 * n);
  BlockBasis blk;
  blk.degree = n;
  blk.raw = top;
  blk.fields.resize(top.size());
  blk.scales.assign(top.size(), Rational(1));

  const std::size_t nl = lower.size();
  if (nl == 0) {
    blk.fields = top;
  } else {
    RationalMatrix lower_gram(nl, nl);
    parallel_for(nl * nl, [&](std::size_t idx) {
      const std::size_t i = idx / nl, j = idx % nl;
      lower_gram(i, j) =
          moment_dot_integer(table, lower.elements[j].field, lower.elements[i].field);
    });
    if (!lower_gram.is_symmetric())
      throw InvariantViolation("block_basis: lower Gram not exactly symmetric");
    const RationalLU lu(lower_gram);
    parallel_for(top.size(), [&](std::size_t t) {
      RationalVector rhs(nl);
      for (std::size_t i = 0; i < nl; ++i)
        rhs[i] = moment_dot_integer(table, lower.elements[i].field, top[t]);
      const RationalVector c = lu.solve(rhs);
      BigInt common_den = 1;
      for (const auto& ci : c) common_den = lcm(common_den, den(ci));
      auto dense = detail::to_dense_coefficients(top[t], n);
      for (auto& x : dense) x *= common_den;
      for (std::size_t i = 0; i < nl; ++i) {
        if (c[i] == 0) continue;
        const BigInt scaled = num(c[i]) * (common_den / den(c[i]));
        const auto& w = lower.elements[i].field;
        for (int comp = 0; comp < 3; ++comp)
          for (const auto& [mono, coeff] : w[comp].terms())
            dense[detail::coefficient_column(comp, mono)] -= scaled * num(coeff);
      }
      auto [field, content] = detail::from_dense_coefficients(dense, n);
      blk.fields[t] = std::move(field);
      blk.scales[t] = Rational(common_den, content);
    });
  }

  detail::finalize_block(table, blk);
  return blk;
}

} // namespace poincare
