#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "poincare/geometry.hpp"
#include "poincare/moments.hpp"
#include "poincare/polynomial.hpp"

namespace poincare {

namespace detail {

inline Polynomial3 euler_operator(const Polynomial3& f) {
  Polynomial3 g;
  for (int i = 0; i < 3; ++i)
    g += Polynomial3::variable(i) * f.derivative(i);
  return g;
}

} // namespace detail

/// L f = -laplacian(f) + sum_ij d_i x_i x_j d_j f + 9/4 f. On a homogeneous
/// polynomial of degree k the non-laplacian part acts as (k + 3/2)^2.
inline Polynomial3 legendre_apply(const Polynomial3& f) {
  Polynomial3 lap;
  for (int i = 0; i < 3; ++i) lap += f.derivative(i).derivative(i);
  const Polynomial3 euler = detail::euler_operator(f);
  Polynomial3 out = -lap;
  out += Rational(3) * euler;
  out += detail::euler_operator(euler);
  out += Rational(9, 4) * f;
  return out;
}

/// Ellipsoid variant: the second derivatives are weighted by 1/A_i.
inline Polynomial3 legendre_apply(const Ellipsoid& e, const Polynomial3& f) {
  Polynomial3 lap;
  for (int i = 0; i < 3; ++i)
    lap += (1 / e.coefficient(i)) * f.derivative(i).derivative(i);
  const Polynomial3 euler = detail::euler_operator(f);
  Polynomial3 out = -lap;
  out += Rational(3) * euler;
  out += detail::euler_operator(euler);
  out += Rational(9, 4) * f;
  return out;
}

constexpr std::size_t dim_ortho(int n) { return std::size_t((n + 1) * (n + 2)) / 2; }

/// Eigenvalue of the degree-n orthogonal space: (n + 3/2)^2.
inline Rational legendre_eigenvalue(int n) {
  return Rational(2 * n + 3, 2) * Rational(2 * n + 3, 2);
}

/// Degree-n orthogonal polynomials: exact degree n, orthogonal in L^2(E) to
/// everything of lower degree (and to each other — the construction is a full
/// graded Gram-Schmidt over monomials, unnormalized to stay rational).
struct OrthoSpace {
  int degree = 0;
  std::vector<Polynomial3> elements;
  std::vector<Rational> norms; // squared norms, reduced units; the Gram is diagonal
};

/// Incremental exact Gram-Schmidt over the monomial chain.
class OrthoBuilder {
public:
  explicit OrthoBuilder(Ellipsoid e) : ellipsoid_(std::move(e)) {}

  const Ellipsoid& ellipsoid() const { return ellipsoid_; }
  int max_degree() const { return built_degree_; }

  void extend_to(int n) {
    if (n <= built_degree_) return;
    if (!table_ || table_->max_degree() < 2 * n)
      table_ = std::make_unique<MomentTable>(ellipsoid_, 2 * std::max(n, 1));
    if (spaces_.empty()) {
      OrthoSpace constants;
      constants.degree = 0;
      constants.elements = {Polynomial3::constant(1)};
      constants.norms = {inner_product_polys(constants.elements[0], constants.elements[0])};
      spaces_.push_back(std::move(constants));
    }
    for (int d = built_degree_ + 1; d <= n; ++d) {
      OrthoSpace space;
      space.degree = d;
      for (const auto m : monomials_of_degree(d)) {
        Polynomial3 phi = Polynomial3::monomial(m, 1);
        for (const auto& lower : spaces_)
          for (std::size_t i = 0; i < lower.elements.size(); ++i) {
            const Rational c =
                inner_product_polys(phi, lower.elements[i]) / lower.norms[i];
            if (c != 0) phi -= c * lower.elements[i];
          }
        for (std::size_t i = 0; i < space.elements.size(); ++i) {
          const Rational c = inner_product_polys(phi, space.elements[i]) / space.norms[i];
          if (c != 0) phi -= c * space.elements[i];
        }
        phi = phi.primitive();
        space.norms.push_back(inner_product_polys(phi, phi));
        space.elements.push_back(std::move(phi));
      }
      spaces_.push_back(std::move(space));
      built_degree_ = d;
    }
  }

  /// Degree 0 is the constants.
  const OrthoSpace& space(int n) {
    extend_to(std::max(n, 1));
    return spaces_.at(std::size_t(n));
  }

  Rational inner_product_polys(const Polynomial3& f, const Polynomial3& g) const {
    return inner_product_reduced(*table_, f, g);
  }

private:
  Ellipsoid ellipsoid_;
  std::unique_ptr<MomentTable> table_;
  std::vector<OrthoSpace> spaces_; // degrees 0..built_degree_
  int built_degree_ = 0;
};

/// Degree-n orthogonal space over the unit ball.
inline OrthoSpace orthopoly_space(int n) {
  OrthoBuilder builder(Ellipsoid::unit_ball());
  builder.extend_to(std::max(1, n));
  return builder.space(n);
}

inline OrthoSpace orthopoly_space(const Ellipsoid& e, int n) {
  OrthoBuilder builder(e);
  builder.extend_to(std::max(1, n));
  return builder.space(n);
}

/// L phi = (n + 3/2)^2 phi, exactly, for every element of the degree-n space.
inline bool eigenrelation_check(const Ellipsoid& e, const OrthoSpace& space) {
  const Rational ev = legendre_eigenvalue(space.degree);
  for (const auto& phi : space.elements) {
    const Polynomial3 lhs = legendre_apply(e, phi);
    if (!(lhs - ev * phi).is_zero()) return false;
  }
  return true;
}

inline bool eigenrelation_check(int n) {
  return eigenrelation_check(Ellipsoid::unit_ball(), orthopoly_space(n));
}

/// Counting function N(lambda) = sum over n with n + 3/2 <= sqrt(lambda) of
/// (n+1)(n+2)/2; closed form C(m+3, 3) with m the largest admitted degree.
inline std::uint64_t weyl_count_sqrt(double sqrt_lambda) {
  if (sqrt_lambda < 1.5) return 0;
  const auto m = std::uint64_t(sqrt_lambda - 1.5);
  return (m + 1) * (m + 2) * (m + 3) / 6;
}

inline std::uint64_t weyl_count(double lambda) {
  return lambda > 0 ? weyl_count_sqrt(std::sqrt(lambda)) : 0;
}

/// Phase-space (Liouville) volume: lambda^{3/2} / 6.
inline double liouville_volume(double lambda) { return std::pow(lambda, 1.5) / 6.0; }

} // namespace poincare
