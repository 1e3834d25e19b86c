#include <doctest.h>

#include "poincare/basis.hpp"
#include "poincare/block_basis.hpp"

using namespace poincare;

namespace {
Polynomial3 mono(int p, int q, int r, Rational c = 1) {
  return Polynomial3::monomial(MultiIndex{std::uint16_t(p), std::uint16_t(q), std::uint16_t(r)},
                               std::move(c));
}

VectorField axis_rotation(int axis) {
  // e_axis x x
  VectorField x(mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1));
  std::array<Rational, 3> e{0, 0, 0};
  e[std::size_t(axis)] = 1;
  return cross(e, x);
}

const Ellipsoid kTriaxial = Ellipsoid::from_semi_axes(1, Rational(4, 5), Rational(2, 3));
const Ellipsoid kFlattened = Ellipsoid::from_semi_axes(1, 1, Rational(1, 10));
} // namespace

TEST_CASE("dimension formulas telescope") {
  CHECK(dim_vn0(1) == 3);
  CHECK(dim_vn0(2) == 11);
  CHECK(dim_vn0(3) == 26);
  CHECK(dim_wn(1) == 3);
  CHECK(dim_wn(2) == 8);
  CHECK(dim_wn(3) == 15);
  for (int n = 1; n <= 12; ++n) {
    std::size_t sum = 0;
    for (int k = 1; k <= n; ++k) sum += dim_wn(k);
    CHECK(sum == dim_vn0(n));
  }
}

TEST_CASE("spanning fields of degree one are the rigid rotations") {
  const auto fields = spanning_fields(Ellipsoid::unit_ball(), 1);
  REQUIRE(fields.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(fields[std::size_t(i)] == axis_rotation(i));
}

TEST_CASE("select_basis counts match the dimension law") {
  const auto ball = Ellipsoid::unit_ball();
  CHECK(select_basis(ball, 1).size() == 3);
  CHECK(spanning_fields(ball, 2).size() == 12); // one dependency
  CHECK(select_basis(ball, 2).size() == 11);
  CHECK(select_basis(ball, 3).size() == 26);
  CHECK(select_basis(kTriaxial, 2).size() == 11);
  CHECK(select_basis(kFlattened, 3).size() == 26);
}

TEST_CASE("verify_field") {
  const auto ball = Ellipsoid::unit_ball();
  CHECK(verify_field(ball, axis_rotation(2)).pass());

  VectorField e1(Polynomial3::constant(1), Polynomial3{}, Polynomial3{});
  const auto c = verify_field(ball, e1);
  CHECK(c.divergence_free);
  CHECK(!c.tangent);

  const auto f = ball.quadric();
  const auto gen = cross_axis(gradient(mono(1, 0, 0) * f), 1);
  CHECK(verify_field(ball, gen).pass());
}

TEST_CASE("gradient complement") {
  const auto ball = Ellipsoid::unit_ball();
  CHECK(gradient_complement_check(ball, select_basis(ball, 1)));
  CHECK(gradient_complement_check(ball, select_basis(ball, 3)));
  CHECK(gradient_complement_check(kTriaxial, select_basis(kTriaxial, 2)));

  // <e3 x x, grad(x1 x3)> = 0 over the ball
  MomentTable table(ball, 4);
  CHECK(inner_product_reduced(table, axis_rotation(2), gradient(mono(1, 0, 1))) == 0);
}

TEST_CASE("graded basis is stratified") {
  for (const auto& e : {Ellipsoid::unit_ball(), kTriaxial, kFlattened}) {
    const auto basis = graded_basis(e, 5);
    CHECK(basis.size() == dim_vn0(5));
    for (int k = 1; k <= 5; ++k) CHECK(basis.count_with_degree(k) == dim_wn(k));
    for (const auto& el : basis.elements) CHECK(el.field.degree() == el.degree);
  }
}

TEST_CASE("basis stack blocks are exactly orthogonal to lower degrees") {
  for (const auto& e : {Ellipsoid::unit_ball(), kTriaxial}) {
    BasisStack stack(e);
    stack.extend_to(4);
    const auto& table = stack.moments();
    for (int n = 2; n <= 4; ++n) {
      const auto& blk = stack.block(n);
      REQUIRE(blk.size() == dim_wn(n));
      for (const auto& w : blk.fields) {
        CHECK(verify_field(e, w).pass());
        for (int k = 1; k < n; ++k)
          for (const auto& lower_raw : stack.block(k).raw)
            CHECK(moment_dot_integer(table, w, lower_raw) == 0);
      }
      // Gram is symmetric positive (diagonal positive suffices as smoke here)
      for (std::size_t i = 0; i < blk.size(); ++i) CHECK(blk.gram(i, i) > 0);
    }
  }
}

TEST_CASE("degree-1 block of the ball is the rigid rotations") {
  BasisStack stack(Ellipsoid::unit_ball());
  stack.extend_to(1);
  const auto& blk = stack.block(1);
  REQUIRE(blk.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(blk.fields[std::size_t(i)] == axis_rotation(i));
  // <e_i x x, e_i x x> = 8/15 (units of pi)
  CHECK(blk.gram(0, 0) == Rational(8, 15));
  CHECK(blk.gram(0, 1) == 0);
}

TEST_CASE("standalone block_basis agrees with the stack") {
  const auto& e = kTriaxial;
  BasisStack stack(e);
  stack.extend_to(3);
  const auto lower = graded_basis(e, 2);
  const auto full = graded_basis(e, 3);
  const auto blk = block_basis(e, 3, lower, full);
  REQUIRE(blk.size() == dim_wn(3));
  const auto& fast = stack.block(3);
  for (std::size_t i = 0; i < blk.size(); ++i) CHECK(blk.fields[i] == fast.fields[i]);
  CHECK(blk.gram == fast.gram);
}

TEST_CASE("construction is deterministic") {
  BasisStack a(kTriaxial), b(kTriaxial);
  a.extend_to(3);
  b.extend_to(3);
  for (int k = 1; k <= 3; ++k) {
    for (std::size_t i = 0; i < a.block(k).size(); ++i) {
      CHECK(a.block(k).fields[i] == b.block(k).fields[i]);
      CHECK(a.block(k).raw[i] == b.block(k).raw[i]);
    }
    CHECK(a.block(k).gram == b.block(k).gram);
  }
}

TEST_CASE("block_basis rejects non-stratified input") {
  const auto ball = Ellipsoid::unit_ball();
  auto lower = graded_basis(ball, 1);
  auto full = graded_basis(ball, 2);
  full.elements[3].degree = 1; // corrupt a label
  CHECK_THROWS_AS(block_basis(ball, 2, lower, full), DimensionMismatch);
}
