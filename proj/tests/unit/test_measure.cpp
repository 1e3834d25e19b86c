#include <doctest.h>

#include <cmath>

#include "poincare/measure.hpp"

using namespace poincare;

TEST_CASE("direction frequency examples") {
  const auto ball = Ellipsoid::unit_ball();
  const RotationVector omega(0, 0, 1);
  CHECK(lambda_direction(ball, omega, {0, 0, 1}) == doctest::Approx(1.0));
  CHECK(lambda_direction(ball, omega, {1, 0, 0}) == doctest::Approx(0.0));

  const auto e = Ellipsoid::from_coefficients(1, 1, 4);
  CHECK(lambda_direction(e, omega, {1, 0, 1}) == doctest::Approx(2.0 / std::sqrt(5.0)));

  // homogeneous of degree zero
  CHECK(lambda_direction(e, omega, {0.3, -0.2, 0.9}) ==
        doctest::Approx(lambda_direction(e, omega, {3, -2, 9})));
}

TEST_CASE("axisymmetric density and cdf") {
  CHECK(axisym_density(1.0, 0.3) == doctest::Approx(0.5));
  CHECK(axisym_density(4.0, 0.0) == doctest::Approx(0.25));
  CHECK(axisym_density(2.0, 1.5) == 0.0);
  CHECK(axisym_cdf(2.0, 0.0) == doctest::Approx(0.5));
  CHECK(axisym_cdf(2.0, 1.0) == 1.0);
  CHECK(axisym_cdf(1.0, 0.5) == doctest::Approx(0.75));

  // the closed-form cdf must reproduce the density under numerical
  // differentiation before it is relied on
  for (double a : {0.1, 0.25, 1.0, 4.0, 10.0}) {
    const double h = 1e-6;
    for (double u = -0.95; u <= 0.95; u += 0.05) {
      const double numeric = (axisym_cdf(a, u + h) - axisym_cdf(a, u - h)) / (2 * h);
      CHECK(std::abs(numeric - axisym_density(a, u)) < 1e-8);
    }
    // unit mass by midpoint quadrature
    const int n = 400000;
    double mass = 0;
    for (int k = 0; k < n; ++k) mass += axisym_density(a, -1.0 + (k + 0.5) * 2.0 / n) * 2.0 / n;
    CHECK(std::abs(mass - 1.0) < 1e-8);
    // density jump at the spectrum edge
    CHECK(axisym_density(a, 1.0) == doctest::Approx(a / 2));
    CHECK(axisym_density(a, -1.0) == doctest::Approx(a / 2));
  }
}

TEST_CASE("sphere grid weights") {
  const auto grid = sphere_grid(100000);
  // compensated summation: the plain running sum accumulates n*eps roundoff
  double total = 0, carry = 0;
  for (const auto& d : grid) {
    const double y = d.weight - carry;
    const double t = total + y;
    carry = (t - total) - y;
    total = t;
    const double n2 = d.xi[0] * d.xi[0] + d.xi[1] * d.xi[1] + d.xi[2] * d.xi[2];
    CHECK(std::abs(n2 - 1.0) < 1e-12);
  }
  CHECK(std::abs(total - 4 * M_PI) < 1e-12 * 4 * M_PI);
}

TEST_CASE("quadrature cdf against the closed form") {
  const RotationVector omega(0, 0, 1);
  // ball: uniform distribution
  const auto ball_cdf = general_cdf(Ellipsoid::unit_ball(), omega, 100000);
  double sup = 0;
  for (std::size_t k = 0; k < ball_cdf.u.size(); ++k)
    sup = std::max(sup, std::abs(ball_cdf.cdf[k] - 0.5 * (1 + ball_cdf.u[k])));
  CHECK(sup < 4e-3);
  CHECK(ball_cdf.cdf.front() == 0.0);
  CHECK(ball_cdf.cdf.back() == doctest::Approx(1.0));
  CHECK(ball_cdf.evaluate(0.0) == doctest::Approx(0.5).epsilon(4e-3));

  // axisymmetric a = 1/4: A = (1, 1, 1/4)
  const auto e = Ellipsoid::from_coefficients(1, 1, Rational(1, 4));
  const auto cdf = general_cdf(e, omega, 100000);
  sup = 0;
  for (std::size_t k = 0; k < cdf.u.size(); ++k)
    sup = std::max(sup, std::abs(cdf.cdf[k] - axisym_cdf(0.25, cdf.u[k])));
  CHECK(sup < 4e-3);

  // symmetry under u -> -u within quadrature error
  for (double u : {0.2, 0.5, 0.8})
    CHECK(std::abs(cdf.evaluate(u) + cdf.evaluate(-u) - 1.0) < 4e-3);
}

TEST_CASE("quadrature cdf is invariant under axis relabeling") {
  const RotationVector omega(0, 0, 1);
  const auto e1 = Ellipsoid::from_semi_axes(1, Rational(4, 5), Rational(2, 3));
  const auto e2 = Ellipsoid::from_semi_axes(Rational(4, 5), 1, Rational(2, 3));
  const auto c1 = general_cdf(e1, omega, 200000);
  const auto c2 = general_cdf(e2, omega, 200000);
  double sup = 0;
  for (std::size_t k = 0; k < c1.u.size(); ++k)
    sup = std::max(sup, std::abs(c1.cdf[k] - c2.cdf[k]));
  CHECK(sup < 2e-3);
}

TEST_CASE("monte carlo mode reproduces the deterministic grid") {
  const RotationVector omega(0, 0, 1);
  const auto e = Ellipsoid::from_coefficients(1, 1, 4);
  const auto det = general_cdf(e, omega, 400000);
  const auto mc = general_cdf(e, omega, sphere_grid_random(400000, 42));
  const auto mc_again = general_cdf(e, omega, sphere_grid_random(400000, 42));
  double sup = 0;
  for (std::size_t k = 0; k < det.u.size(); ++k) {
    sup = std::max(sup, std::abs(det.cdf[k] - mc.cdf[k]));
    CHECK(mc.cdf[k] == mc_again.cdf[k]); // seeded reproducibility
  }
  CHECK(sup < 5e-3);
}

TEST_CASE("empirical cdf and ks distance") {
  const auto emp = empirical_cdf({-0.5, 0.0, 0.5}, 1.0);
  CHECK(emp.evaluate(-0.6) == 0.0);
  CHECK(emp.evaluate(-0.5) == doctest::Approx(1.0 / 3));
  CHECK(emp.evaluate(0.0) == doctest::Approx(2.0 / 3));
  CHECK(emp.evaluate(0.5) == 1.0);

  const auto uniform = axisym_cdf_sampled(1.0);
  CHECK(ks_distance(emp, uniform) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(ks_distance(uniform, uniform) == 0.0);
  CHECK(ks_distance(emp, emp) == 0.0);

  // symmetric input brackets 1/2 at zero
  const auto sym = empirical_cdf({-0.7, -0.1, 0.1, 0.7}, 1.0);
  CHECK(sym.evaluate(-1e-9) <= 0.5);
  CHECK(sym.evaluate(0.1) >= 0.5);
}
