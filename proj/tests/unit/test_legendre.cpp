#include <doctest.h>

#include <random>

#include "poincare/legendre.hpp"

#include "../support/random_fields.hpp"

using namespace poincare;

namespace {
Polynomial3 mono(int p, int q, int r, Rational c = 1) {
  return Polynomial3::monomial(MultiIndex{std::uint16_t(p), std::uint16_t(q), std::uint16_t(r)},
                               std::move(c));
}
} // namespace

TEST_CASE("legendre operator on low-degree polynomials") {
  CHECK(legendre_apply(Polynomial3::constant(1)) == Polynomial3::constant(Rational(9, 4)));
  CHECK(legendre_apply(mono(1, 0, 0)) == mono(1, 0, 0, Rational(25, 4)));
  CHECK(legendre_apply(mono(1, 1, 0)) == mono(1, 1, 0, Rational(49, 4)));
}

TEST_CASE("orthogonal spaces") {
  const auto constants = orthopoly_space(0);
  REQUIRE(constants.elements.size() == 1);
  CHECK(constants.elements[0] == Polynomial3::constant(1));

  const auto linear = orthopoly_space(1);
  REQUIRE(linear.elements.size() == 3);
  // monomials x3, x2, x1 are already orthogonal to the constants
  CHECK(linear.elements[0] == mono(0, 0, 1));
  CHECK(linear.elements[1] == mono(0, 1, 0));
  CHECK(linear.elements[2] == mono(1, 0, 0));

  CHECK(orthopoly_space(2).elements.size() == 6);
  CHECK(dim_ortho(2) == 6);

  // exact orthogonality to all lower-degree monomials
  OrthoBuilder builder(Ellipsoid::unit_ball());
  builder.extend_to(3);
  const auto& space = builder.space(3);
  for (const auto& phi : space.elements) {
    CHECK(phi.degree() == 3);
    for (const auto m : monomials_up_to(2))
      CHECK(builder.inner_product_polys(phi, Polynomial3::monomial(m, 1)) == 0);
  }
}

TEST_CASE("dimension bookkeeping") {
  for (int n = 1; n <= 12; ++n)
    CHECK(3 * dim_ortho(n) - dim_ortho(n + 1) == std::size_t(n * (n + 2)));
}

TEST_CASE("exact eigenrelation on the ball") {
  OrthoBuilder builder(Ellipsoid::unit_ball());
  builder.extend_to(8);
  for (int n = 0; n <= 8; ++n)
    CHECK(eigenrelation_check(Ellipsoid::unit_ball(), builder.space(n)));

  // negative control: a perturbed element must fail
  auto broken = builder.space(4);
  broken.elements[2] += mono(1, 0, 0);
  CHECK(!eigenrelation_check(Ellipsoid::unit_ball(), broken));
}

TEST_CASE("exact eigenrelation on an ellipsoid") {
  const auto e = Ellipsoid::from_semi_axes(1, Rational(4, 5), Rational(2, 3));
  OrthoBuilder builder(e);
  builder.extend_to(6);
  for (int n = 0; n <= 6; ++n) CHECK(eigenrelation_check(e, builder.space(n)));
}

TEST_CASE("legendre operator is symmetric in the ball inner product") {
  std::mt19937 rng(31415);
  MomentTable table(Ellipsoid::unit_ball(), 14);
  for (int trial = 0; trial < 12; ++trial) {
    const auto f = testgen::random_polynomial(rng, 6, 6);
    const auto g = testgen::random_polynomial(rng, 6, 6);
    CHECK(inner_product_reduced(table, legendre_apply(f), g) ==
          inner_product_reduced(table, f, legendre_apply(g)));
  }
}

TEST_CASE("weyl counting function") {
  CHECK(weyl_count(4.0) == 1);
  CHECK(weyl_count_sqrt(10.6) == 220);
  CHECK(weyl_count_sqrt(1.49) == 0);
  CHECK(weyl_count_sqrt(1.5) == 1);

  // ratio to the Liouville volume on integer grid points: 1 - 1/s^2 exactly
  for (int s = 25; s <= 100; s += 3) {
    const double ratio = double(weyl_count_sqrt(s)) / liouville_volume(double(s) * s);
    CHECK(ratio == doctest::Approx(1.0 - 1.0 / (double(s) * s)).epsilon(1e-12));
    CHECK(ratio > 0.9);
    CHECK(ratio < 1.1);
  }
  // off-grid worst case stays inside the documented windows
  for (double s = 60.0; s < 80.0; s += 0.37) {
    const double ratio = double(weyl_count_sqrt(s)) / liouville_volume(s * s);
    CHECK(ratio > 0.95);
    CHECK(ratio < 1.05);
  }
}
