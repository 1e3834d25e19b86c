#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

namespace poincare {

/// Monomial exponents (p, q, r) of x1^p x2^q x3^r.
struct MultiIndex {
  std::uint16_t p = 0;
  std::uint16_t q = 0;
  std::uint16_t r = 0;

  constexpr int degree() const { return int(p) + int(q) + int(r); }

  constexpr std::uint16_t operator[](int axis) const {
    return axis == 0 ? p : (axis == 1 ? q : r);
  }

  constexpr bool all_even() const { return (p % 2 == 0) && (q % 2 == 0) && (r % 2 == 0); }

  /// Parity class in [0, 8): one bit per axis.
  constexpr unsigned parity() const { return (p & 1u) | ((q & 1u) << 1) | ((r & 1u) << 2); }

  constexpr MultiIndex incremented(int axis) const {
    MultiIndex m = *this;
    if (axis == 0) ++m.p;
    else if (axis == 1) ++m.q;
    else ++m.r;
    return m;
  }

  constexpr MultiIndex decremented(int axis) const {
    MultiIndex m = *this;
    if (axis == 0) --m.p;
    else if (axis == 1) --m.q;
    else --m.r;
    return m;
  }

  friend constexpr MultiIndex operator+(MultiIndex a, MultiIndex b) {
    return MultiIndex{std::uint16_t(a.p + b.p), std::uint16_t(a.q + b.q), std::uint16_t(a.r + b.r)};
  }

  friend constexpr bool operator==(MultiIndex a, MultiIndex b) {
    return a.p == b.p && a.q == b.q && a.r == b.r;
  }
};

/// Graded-lexicographic term order with x1 > x2 > x3: compares total degree
/// first, then (p, q, r) lexicographically. This is the canonical order for
/// term storage, scans, and tie-breaking everywhere in the library.
constexpr bool grlex_less(MultiIndex a, MultiIndex b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.p != b.p) return a.p < b.p;
  if (a.q != b.q) return a.q < b.q;
  return a.r < b.r;
}

struct GrlexLess {
  constexpr bool operator()(MultiIndex a, MultiIndex b) const { return grlex_less(a, b); }
};

constexpr std::uint64_t grlex_key(MultiIndex m) {
  return (std::uint64_t(m.degree()) << 48) | (std::uint64_t(m.p) << 32) |
         (std::uint64_t(m.q) << 16) | std::uint64_t(m.r);
}

/// All monomials of total degree <= n, ascending in the canonical order.
inline std::vector<MultiIndex> monomials_up_to(int n) {
  std::vector<MultiIndex> out;
  out.reserve(std::size_t((n + 1) * (n + 2) * (n + 3) / 6));
  for (int d = 0; d <= n; ++d)
    for (int p = 0; p <= d; ++p)
      for (int q = 0; q <= d - p; ++q)
        out.push_back(MultiIndex{std::uint16_t(p), std::uint16_t(q), std::uint16_t(d - p - q)});
  return out;
}

/// All monomials of total degree exactly d, ascending.
inline std::vector<MultiIndex> monomials_of_degree(int d) {
  std::vector<MultiIndex> out;
  out.reserve(std::size_t((d + 1) * (d + 2) / 2));
  for (int p = 0; p <= d; ++p)
    for (int q = 0; q <= d - p; ++q)
      out.push_back(MultiIndex{std::uint16_t(p), std::uint16_t(q), std::uint16_t(d - p - q)});
  return out;
}

constexpr std::size_t dim_polynomials(int n) {
  return std::size_t((n + 1) * (n + 2) * (n + 3) / 6);
}

/// Dense rank of a monomial within monomials_up_to(...): position in the
/// canonical ascending order.
inline std::size_t grlex_rank(MultiIndex m) {
  const int d = m.degree();
  std::size_t below = dim_polynomials(d - 1 >= 0 ? d - 1 : -1);
  // within degree d: monomials with smaller p, then same p smaller q
  std::size_t within = 0;
  for (int p = 0; p < m.p; ++p) within += std::size_t(d - p + 1);
  within += m.q;
  return below + within;
}

} // namespace poincare
