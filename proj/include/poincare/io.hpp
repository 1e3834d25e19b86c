#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "poincare/basis.hpp"
#include "poincare/eigen_solver.hpp"
#include "poincare/geometry.hpp"
#include "poincare/legendre.hpp"
#include "poincare/measure.hpp"
#include "poincare/raydyn.hpp"
#include "poincare/spectrum.hpp"

namespace poincare {

inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Spectrum CSV: one row per eigenvalue, 17 significant digits.
inline void write_spectrum_csv(std::ostream& os, const SpectralBlock& block) {
  os << "degree,index,lambda,residual\n";
  for (std::size_t i = 0; i < block.eigenvalues.size(); ++i) {
    const int deg = block.source_degree.empty() ? block.degree : block.source_degree[i];
    const double res = block.residuals.empty() ? 0.0 : block.residuals[i];
    os << deg << ',' << i << ',' << format_g17(block.eigenvalues[i]) << ',' << format_g17(res)
       << '\n';
  }
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumResult& result) {
  os << "degree,index,lambda,residual\n";
  for (const auto& block : result.blocks)
    for (std::size_t i = 0; i < block.eigenvalues.size(); ++i) {
      const double res = block.residuals.empty() ? 0.0 : block.residuals[i];
      os << block.degree << ',' << i << ',' << format_g17(block.eigenvalues[i]) << ','
         << format_g17(res) << '\n';
    }
}

/// Measure CSV: cumulative distribution and central-difference density.
inline void write_measure_csv(std::ostream& os, const MeasureCDF& cdf) {
  os << "u,cdf,density\n";
  const auto& u = cdf.u;
  for (std::size_t k = 0; k < u.size(); ++k) {
    double density = 0;
    if (k > 0 && k + 1 < u.size())
      density = (cdf.cdf[k + 1] - cdf.cdf[k - 1]) / (u[k + 1] - u[k - 1]);
    os << format_g17(u[k]) << ',' << format_g17(cdf.cdf[k]) << ',' << format_g17(density)
       << '\n';
  }
}

/// Mode-field CSV for external plotting.
inline void write_mode_field_csv(std::ostream& os, const std::vector<ModeSample>& samples) {
  os << "x1,x2,x3,re_v1,im_v1,re_v2,im_v2,re_v3,im_v3,magnitude\n";
  for (const auto& s : samples) {
    os << format_g17(s.position[0]) << ',' << format_g17(s.position[1]) << ','
       << format_g17(s.position[2]);
    for (int c = 0; c < 3; ++c)
      os << ',' << format_g17(s.velocity[std::size_t(c)].real()) << ','
         << format_g17(s.velocity[std::size_t(c)].imag());
    os << ',' << format_g17(s.magnitude) << '\n';
  }
}

/// Trajectory CSV: one row per reflection event.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
  os << "event,t,x1,x2,x3,xi1,xi2,xi3,branch,lambda1_abs,sigmaL\n";
  for (const auto& ev : trajectory.events) {
    os << ev.index << ',' << format_g17(ev.time);
    for (double x : ev.position) os << ',' << format_g17(x);
    for (double x : ev.covector) os << ',' << format_g17(x);
    os << ',' << ev.branch << ',' << format_g17(ev.lambda1_abs) << ',' << format_g17(ev.sigma)
       << '\n';
  }
}

/// Weyl CSV: counting function against the Liouville volume.
inline void write_weyl_csv(std::ostream& os, const std::vector<double>& sqrt_lambdas) {
  os << "sqrt_lambda,count,liouville,ratio\n";
  for (double s : sqrt_lambdas) {
    const auto count = weyl_count_sqrt(s);
    const double vol = liouville_volume(s * s);
    os << format_g17(s) << ',' << count << ',' << format_g17(vol) << ','
       << format_g17(double(count) / vol) << '\n';
  }
}

/// Exact-rational serialization of a basis for regression goldens.
inline nlohmann::json basis_to_json(const BasisSet& basis) {
  nlohmann::json root;
  root["degree"] = basis.degree;
  nlohmann::json coeffs = nlohmann::json::array();
  for (int i = 0; i < 3; ++i)
    coeffs.push_back(format_rational(basis.ellipsoid.coefficient(i)));
  root["quadric_coefficients"] = coeffs;
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& el : basis.elements) {
    nlohmann::json field;
    field["degree"] = el.degree;
    nlohmann::json comps = nlohmann::json::array();
    for (int c = 0; c < 3; ++c) {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& [m, coeff] : el.field[c].terms())
        terms.push_back({{"m", {m.p, m.q, m.r}}, {"c", format_rational(coeff)}});
      comps.push_back(terms);
    }
    field["components"] = comps;
    elements.push_back(field);
  }
  root["elements"] = elements;
  return root;
}

inline nlohmann::json ellipsoid_to_json(const Ellipsoid& e) {
  nlohmann::json j;
  j["quadric_coefficients"] = {format_rational(e.coefficient(0)),
                               format_rational(e.coefficient(1)),
                               format_rational(e.coefficient(2))};
  if (e.semi_axes()) {
    j["semi_axes"] = {format_rational((*e.semi_axes())[0]), format_rational((*e.semi_axes())[1]),
                      format_rational((*e.semi_axes())[2])};
  }
  return j;
}

inline nlohmann::json rotation_to_json(const RotationVector& omega) {
  nlohmann::json j;
  j["components"] = {format_rational(omega.component(0)), format_rational(omega.component(1)),
                     format_rational(omega.component(2))};
  j["norm_squared"] = format_rational(omega.norm_squared());
  j["norm"] = omega.norm();
  return j;
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open output file: " + path);
  os << contents;
}

} // namespace poincare
