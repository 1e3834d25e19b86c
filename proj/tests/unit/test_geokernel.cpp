#include <doctest.h>

#include "poincare/eigen_solver.hpp"
#include "poincare/geokernel.hpp"

using namespace poincare;

TEST_CASE("planar operator from the tilted quadric") {
  const GeneralQuadric round(1, 1, 0, 0);
  const auto m1 = v_operator(round);
  CHECK(m1.m(0, 0) == 0);
  CHECK(m1.m(0, 1) == -1);
  CHECK(m1.m(1, 0) == 1);
  CHECK(m1.m(1, 1) == 0);
  CHECK(m1.determinant() == 1);

  const GeneralQuadric tilted(2, 1, Rational(1, 2), 0);
  const auto m2 = v_operator(tilted);
  CHECK(m2.m(0, 0) == 0);
  CHECK(m2.m(0, 1) == -1);
  CHECK(m2.m(1, 0) == Rational(7, 4));
  CHECK(m2.m(1, 1) == 0);
  CHECK(tilted.delta() == Rational(7, 4));

  // trace-free for generic coefficients
  const GeneralQuadric generic(3, 2, Rational(1, 3), Rational(1, 5));
  const auto m3 = v_operator(generic);
  CHECK(m3.m(0, 0) + m3.m(1, 1) == 0);
  CHECK(m3.determinant() == generic.delta());

  CHECK_THROWS_AS(GeneralQuadric(1, 1, 2, 0), DegenerateQuadric);
}

TEST_CASE("invariant quadratic") {
  const auto s1 = invariant_quadratic(v_operator(GeneralQuadric(1, 1, 0, 0)));
  CHECK(s1(0, 0) == 1);
  CHECK(s1(0, 1) == 0);
  CHECK(s1(1, 1) == 1);

  const auto s2 = invariant_quadratic(v_operator(GeneralQuadric(2, 1, Rational(1, 2), 0)));
  CHECK(s2(0, 0) == 1);
  CHECK(s2(0, 1) == 0);
  CHECK(s2(1, 1) == Rational(4, 7));

  // no nonzero linear form is annihilated
  CHECK(annihilates_no_linear_form(v_operator(GeneralQuadric(3, 2, Rational(1, 3), Rational(1, 5)))));
}

TEST_CASE("geostrophic counts follow the parity rule") {
  const RotationVector axis(0, 0, 1);
  const RotationVector tilted(1, 0, 2);

  BasisStack ball(Ellipsoid::unit_ball());
  ball.extend_to(4);
  BasisStack triaxial(Ellipsoid::from_semi_axes(1, Rational(4, 5), Rational(2, 3)));
  triaxial.extend_to(4);

  for (int n = 1; n <= 4; ++n) {
    const std::size_t expected = n % 2 == 1 ? 1 : 0;
    CHECK(geostrophic_count(ball, axis, n) == expected);
    CHECK(geostrophic_count(triaxial, axis, n) == expected);
    CHECK(geostrophic_count(triaxial, tilted, n) == expected);
  }
}

TEST_CASE("float zero classification agrees with the exact rank") {
  const RotationVector axis(0, 0, 1);
  BasisStack stack(Ellipsoid::from_semi_axes(1, Rational(4, 5), Rational(2, 3)));
  stack.extend_to(4);
  for (int n = 1; n <= 4; ++n) {
    const auto pencil = assemble_block(stack, n, axis);
    const auto block = solve_pencil(pencil, axis.norm());
    CHECK(block.zero_count == geostrophic_count(pencil));
  }
}

TEST_CASE("geostrophic fields obey the exact axis invariance") {
  const RotationVector axis(0, 0, 1);
  const RotationVector tilted(1, 0, 2);
  BasisStack stack(Ellipsoid::from_semi_axes(1, Rational(4, 5), Rational(2, 3)));
  stack.extend_to(3);

  for (const auto& omega : {axis, tilted}) {
    for (int n : {1, 3}) {
      const auto pencil = assemble_block(stack, n, omega);
      const auto fields = geostrophic_kernel_fields(stack, pencil);
      REQUIRE(fields.size() == 1);
      CHECK(verify_field(stack.ellipsoid(), fields[0]).pass());
      CHECK(is_axis_invariant(omega, fields[0]));
    }
  }

  // ball degree-1 kernel is the rigid rotation about the axis
  BasisStack ball(Ellipsoid::unit_ball());
  ball.extend_to(1);
  const auto fields = geostrophic_kernel_fields(ball, assemble_block(ball, 1, axis));
  REQUIRE(fields.size() == 1);
  const VectorField x(Polynomial3::variable(0), Polynomial3::variable(1),
                      Polynomial3::variable(2));
  const auto rotation = cross(axis, x);
  CHECK(fields[0].primitive() == rotation.primitive());
}
