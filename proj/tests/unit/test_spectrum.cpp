#include <doctest.h>

#include <cstdlib>

#include "poincare/measure.hpp"
#include "poincare/spectrum.hpp"

using namespace poincare;

TEST_CASE("cumulative union structure") {
  BasisStack stack(Ellipsoid::unit_ball());
  const RotationVector omega(0, 0, 1);
  SpectrumOptions opt;
  opt.n_max = 3;
  const auto result = spectrum(stack, omega, opt);

  REQUIRE(result.blocks.size() == 3);
  for (int k = 1; k <= 3; ++k)
    CHECK(result.blocks[std::size_t(k - 1)].eigenvalues.size() == dim_wn(k));
  CHECK(result.cumulative.eigenvalues.size() == dim_vn0(3));
  for (std::size_t i = 0; i + 1 < result.cumulative.eigenvalues.size(); ++i)
    CHECK(result.cumulative.eigenvalues[i] <= result.cumulative.eigenvalues[i + 1]);
  // per-eigenvalue provenance sums to the right block sizes
  std::array<std::size_t, 4> per_degree{};
  for (int d : result.cumulative.source_degree) per_degree[std::size_t(d)]++;
  for (int k = 1; k <= 3; ++k) CHECK(per_degree[std::size_t(k)] == dim_wn(k));
}

TEST_CASE("geostrophic ball mode field") {
  BasisStack stack(Ellipsoid::unit_ball());
  stack.extend_to(1);
  const RotationVector omega(0, 0, 1);
  const auto block = solve_pencil(assemble_block(stack, 1, omega), omega.norm());
  // the zero eigenvalue sits in the middle of the degree-1 block
  REQUIRE(std::abs(block.eigenvalues[1]) < 1e-13);
  GridSpec grid;
  grid.points_per_axis = 11;
  const auto samples = mode_field(stack, block, 1, grid);
  REQUIRE(!samples.empty());
  // magnitude is proportional to the distance from the rotation axis
  double scale = 0;
  for (const auto& s : samples) {
    const double rho = std::hypot(s.position[0], s.position[1]);
    if (rho > 0.5) scale = std::max(scale, s.magnitude / rho);
  }
  CHECK(scale > 0);
  for (const auto& s : samples) {
    const double rho = std::hypot(s.position[0], s.position[1]);
    CHECK(std::abs(s.magnitude - scale * rho) < 1e-9);
  }
}

TEST_CASE("mode fields are numerically divergence-free and tangent") {
  const auto e = Ellipsoid::from_semi_axes(1, 1, Rational(1, 2));
  BasisStack stack(e);
  stack.extend_to(3);
  const RotationVector omega(0, 0, 1);
  const auto block = solve_pencil(assemble_block(stack, 3, omega), omega.norm());
  const auto& blk = stack.block(3);

  // reconstruct the mode as a complex combination and probe it directly
  const std::size_t pick = 4;
  const auto& alpha = block.eigenvectors.at(pick);
  auto eval = [&](double x, double y, double z) {
    std::array<std::complex<double>, 3> v{};
    for (std::size_t j = 0; j < blk.size(); ++j) {
      const auto real_part = blk.fields[j].evaluate<double>(x, y, z);
      for (int c = 0; c < 3; ++c) v[std::size_t(c)] += alpha[j] * real_part[std::size_t(c)];
    }
    return v;
  };

  const double h = 1e-5;
  int interior = 0, boundary = 0;
  for (double x : {0.1, -0.3, 0.42})
    for (double y : {0.2, -0.15})
      for (double z : {0.05, -0.31}) {
        if (e.quadric_value(x, y, z) < 0.05) continue;
        ++interior;
        // central-difference divergence of both real and imaginary parts
        std::complex<double> div =
            (eval(x + h, y, z)[0] - eval(x - h, y, z)[0] + eval(x, y + h, z)[1] -
             eval(x, y - h, z)[1] + eval(x, y, z + h)[2] - eval(x, y, z - h)[2]) /
            (2 * h);
        CHECK(std::abs(div) < 1e-8);
      }
  CHECK(interior > 4);

  // tangency on the boundary: <v, grad F> = 0
  const auto grad_f = e.quadric_gradient();
  for (double theta : {0.3, 1.1, 2.0})
    for (double phi : {0.0, 0.9, 2.5}) {
      const double x = std::sin(theta) * std::cos(phi);
      const double y = std::sin(theta) * std::sin(phi);
      const double z = 0.5 * std::cos(theta);
      ++boundary;
      const auto v = eval(x, y, z);
      const auto g = grad_f.evaluate<double>(x, y, z);
      std::complex<double> flux = 0;
      for (int c = 0; c < 3; ++c) flux += v[std::size_t(c)] * g[std::size_t(c)];
      double vmag = 0;
      for (int c = 0; c < 3; ++c) vmag += std::norm(v[std::size_t(c)]);
      CHECK(std::abs(flux) < 1e-10 * std::max(1.0, std::sqrt(vmag)));
    }
  CHECK(boundary == 9);
}

TEST_CASE("ball ks distance improves with accumulated degrees") {
  BasisStack stack(Ellipsoid::unit_ball());
  const RotationVector omega(0, 0, 1);
  const auto uniform = axisym_cdf_sampled(1.0);
  auto ks_up_to = [&](int n) {
    SpectrumOptions opt;
    opt.n_max = n;
    opt.solve.want_vectors = false;
    const auto result = spectrum(stack, omega, opt);
    return ks_distance(empirical_cdf(result.cumulative.eigenvalues, omega.norm()), uniform);
  };
  const double ks4 = ks_up_to(4);
  const double ks10 = ks_up_to(10);
  CHECK(ks10 < ks4);
}

TEST_CASE("assembly is identical across thread counts") {
  const auto build_gram = [] {
    BasisStack stack(Ellipsoid::from_semi_axes(1, Rational(4, 5), Rational(2, 3)));
    stack.extend_to(3);
    return stack.block(3).gram;
  };
  setenv("POINCARE_THREADS", "1", 1);
  const auto gram1 = build_gram();
  setenv("POINCARE_THREADS", "2", 1);
  const auto gram2 = build_gram();
  unsetenv("POINCARE_THREADS");
  CHECK(gram1 == gram2);
}
