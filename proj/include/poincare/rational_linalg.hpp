#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "poincare/errors.hpp"
#include "poincare/matrix.hpp"
#include "poincare/rational.hpp"

namespace poincare {

using RationalMatrix = Matrix<Rational>;
using RationalVector = std::vector<Rational>;

/// One entry of a sparse integer row.
struct SparseEntry {
  std::size_t col;
  BigInt value;
};

using SparseIntRow = std::vector<SparseEntry>;

inline void normalize_content(SparseIntRow& row) {
  BigInt g = 0;
  for (const auto& e : row) g = gcd(g, e.value);
  if (g > 1)
    for (auto& e : row) e.value /= g;
}

/// Incremental exact rank filter over the integers. Rows are reduced against
/// the stored echelon pivots; a row that stays nonzero becomes a new pivot.
/// Content normalization after every elimination keeps entries small.
class SparseIntRankFilter {
public:
  /// Returns true iff the row increased the rank (and was absorbed).
  bool add_row(SparseIntRow row) {
    normalize_content(row);
    while (!row.empty()) {
      const std::size_t lead = row.front().col;
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        pivots_.emplace(lead, std::move(row));
        return true;
      }
      eliminate(row, it->second);
      normalize_content(row);
    }
    return false;
  }

  std::size_t rank() const { return pivots_.size(); }

private:
  static void eliminate(SparseIntRow& row, const SparseIntRow& pivot) {
    // row <- row * p_lead - pivot * r_lead   (cancels the leading column)
    const BigInt a = row.front().value;
    const BigInt b = pivot.front().value;
    const BigInt g = gcd(a, b);
    const BigInt ca = b / g;
    const BigInt cb = a / g;
    SparseIntRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < row.size() && row[i].col < pivot[j].col)) {
        out.push_back({row[i].col, row[i].value * ca});
        ++i;
      } else if (i == row.size() || pivot[j].col < row[i].col) {
        out.push_back({pivot[j].col, -pivot[j].value * cb});
        ++j;
      } else {
        BigInt v = row[i].value * ca - pivot[j].value * cb;
        if (v != 0) out.push_back({row[i].col, std::move(v)});
        ++i;
        ++j;
      }
    }
    row = std::move(out);
  }

  // pivot rows keyed by leading column; map keeps deterministic iteration
  std::map<std::size_t, SparseIntRow> pivots_;
};

/// Exact LU factorization with partial (first nonzero) pivoting.
class RationalLU {
public:
  explicit RationalLU(RationalMatrix a) : lu_(std::move(a)) {
    const std::size_t n = lu_.rows();
    if (n != lu_.cols()) throw DimensionMismatch("RationalLU: matrix must be square");
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      while (piv < n && lu_(piv, k) == 0) ++piv;
      if (piv == n) {
        singular_ = true;
        return;
      }
      if (piv != k) {
        std::swap(perm_[piv], perm_[k]);
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(piv, j), lu_(k, j));
      }
      const Rational inv = 1 / lu_(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        if (lu_(i, k) == 0) continue;
        Rational f = lu_(i, k) * inv;
        lu_(i, k) = f;
        for (std::size_t j = k + 1; j < n; ++j) {
          if (lu_(k, j) != 0) lu_(i, j) -= f * lu_(k, j);
        }
      }
    }
  }

  bool singular() const { return singular_; }

  RationalVector solve(const RationalVector& rhs) const {
    if (singular_) throw DimensionMismatch("RationalLU: singular system");
    const std::size_t n = lu_.rows();
    RationalVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational acc = rhs[perm_[i]];
      for (std::size_t j = 0; j < i; ++j)
        if (lu_(i, j) != 0 && y[j] != 0) acc -= lu_(i, j) * y[j];
      y[i] = std::move(acc);
    }
    for (std::size_t i = n; i-- > 0;) {
      Rational acc = y[i];
      for (std::size_t j = i + 1; j < n; ++j)
        if (lu_(i, j) != 0 && y[j] != 0) acc -= lu_(i, j) * y[j];
      y[i] = Rational(acc / lu_(i, i));
    }
    return y;
  }

private:
  RationalMatrix lu_;
  std::vector<std::size_t> perm_;
  bool singular_ = false;
};

/// Exact rank by Gaussian elimination.
inline std::size_t rank(RationalMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t piv = r;
    while (piv < m && a(piv, c) == 0) ++piv;
    if (piv == m) continue;
    if (piv != r)
      for (std::size_t j = c; j < n; ++j) std::swap(a(piv, j), a(r, j));
    const Rational inv = 1 / a(r, c);
    for (std::size_t i = r + 1; i < m; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (a(r, j) != 0) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Exact null-space basis (columns of the returned vectors), via reduced row
/// echelon form. Deterministic: free columns in ascending order.
inline std::vector<RationalVector> kernel_basis(RationalMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t piv = r;
    while (piv < m && a(piv, c) == 0) ++piv;
    if (piv == m) continue;
    if (piv != r)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(r, j));
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = 0; j < n; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j)
        if (a(r, j) != 0) a(i, j) -= f * a(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(n, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace poincare
