#include <doctest.h>

#include <fstream>
#include <sstream>

#include "poincare/io.hpp"

using namespace poincare;

TEST_CASE("spectrum csv format") {
  BasisStack stack(Ellipsoid::unit_ball());
  const RotationVector omega(0, 0, 1);
  SpectrumOptions opt;
  opt.n_max = 2;
  const auto result = spectrum(stack, omega, opt);

  std::ostringstream os;
  write_spectrum_csv(os, result);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "degree,index,lambda,residual");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == dim_wn(1) + dim_wn(2));

  // 17 significant digits survive a round trip
  std::ostringstream cum;
  write_spectrum_csv(cum, result.cumulative);
  CHECK(cum.str().find("-0.7549703546891") != std::string::npos);

  // identical configuration produces byte-identical output
  BasisStack stack2(Ellipsoid::unit_ball());
  const auto result2 = spectrum(stack2, omega, opt);
  std::ostringstream os2;
  write_spectrum_csv(os2, result2);
  CHECK(os.str() == os2.str());
}

TEST_CASE("measure, trajectory, weyl and mode field headers") {
  std::ostringstream m;
  write_measure_csv(m, axisym_cdf_sampled(1.0, 11));
  CHECK(m.str().rfind("u,cdf,density\n", 0) == 0);

  Trajectory tr;
  tr.events.push_back({0, 0.0, {0.1, 0.2, 0.3}, {1, 0, 2}, 1, 0.5, 1.25});
  std::ostringstream t;
  write_trajectory_csv(t, tr);
  CHECK(t.str().rfind("event,t,x1,x2,x3,xi1,xi2,xi3,branch,lambda1_abs,sigmaL\n", 0) == 0);
  CHECK(t.str().find("0,0,0.1") != std::string::npos);

  std::ostringstream w;
  write_weyl_csv(w, {10.6});
  CHECK(w.str().rfind("sqrt_lambda,count,liouville,ratio\n", 0) == 0);
  CHECK(w.str().find(",220,") != std::string::npos);

  std::ostringstream f;
  write_mode_field_csv(f, {});
  CHECK(f.str() == "x1,x2,x3,re_v1,im_v1,re_v2,im_v2,re_v3,im_v3,magnitude\n");
}

TEST_CASE("basis export golden") {
  const auto basis = graded_basis(Ellipsoid::from_semi_axes(1, Rational(4, 5), Rational(2, 3)), 2);
  const std::string produced = basis_to_json(basis).dump(2) + "\n";

  std::ifstream golden_file("tests/golden/basis_triaxial_n2.json");
  REQUIRE_MESSAGE(golden_file.good(), "run from the repository root");
  std::stringstream golden;
  golden << golden_file.rdbuf();
  CHECK(produced == golden.str());

  // exact rationals serialize as p/q strings
  CHECK(produced.find("\"25/16\"") != std::string::npos);
}
