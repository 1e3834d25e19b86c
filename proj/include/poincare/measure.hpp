#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "poincare/errors.hpp"
#include "poincare/geometry.hpp"
#include "poincare/parallel.hpp"

namespace poincare {

/// Direction-cone frequency: omega * cos(angle(Omega, A_E xi)) with
/// A_E(xi) = (sqrt(A1) xi1, sqrt(A2) xi2, sqrt(A3) xi3). Homogeneous of
/// degree zero in xi.
inline double lambda_direction(const Ellipsoid& e, const RotationVector& omega,
                               const std::array<double, 3>& xi) {
  std::array<double, 3> mapped;
  double norm2 = 0;
  for (int i = 0; i < 3; ++i) {
    mapped[std::size_t(i)] = std::sqrt(e.coefficient_double(i)) * xi[std::size_t(i)];
    norm2 += mapped[std::size_t(i)] * mapped[std::size_t(i)];
  }
  if (norm2 == 0) throw DegenerateDirection("lambda_direction: A_E xi vanished");
  double dot = 0;
  for (int i = 0; i < 3; ++i) dot += to_double(omega.component(i)) * mapped[std::size_t(i)];
  return dot / std::sqrt(norm2);
}

/// Closed-form limiting density for the axisymmetric case (A1 = A2, Omega on
/// the x3 axis), on the normalized frequency u in [-1, 1]; a = A3/A1.
inline double axisym_density(double a, double u) {
  if (a <= 0) throw ConfigError("axisym_density: a must be positive");
  if (std::abs(u) > 1) return 0;
  const double t = u * u + a * (1 - u * u);
  return a / (2 * t * std::sqrt(t));
}

/// Antiderivative of axisym_density with CDF(-1) = 0.
inline double axisym_cdf(double a, double u) {
  if (a <= 0) throw ConfigError("axisym_cdf: a must be positive");
  if (u <= -1) return 0;
  if (u >= 1) return 1;
  return 0.5 * (1 + u / std::sqrt(a + (1 - a) * u * u));
}

enum class MeasureKind { ClosedForm, Quadrature, Empirical };

/// Sampled cumulative distribution on the normalized frequency axis
/// u = lambda/omega in [-1, 1].
struct MeasureCDF {
  MeasureKind kind = MeasureKind::Quadrature;
  std::vector<double> u;      // sample points, ascending
  std::vector<double> cdf;    // values in [0, 1], non-decreasing
  std::vector<double> atoms;  // empirical only: sorted normalized eigenvalues
  std::size_t source_count = 0; // directions or eigenvalues

  double evaluate(double x) const {
    if (kind == MeasureKind::Empirical) {
      // right-continuous step function of the atoms
      const auto it = std::upper_bound(atoms.begin(), atoms.end(), x);
      return double(it - atoms.begin()) / double(atoms.size());
    }
    if (x <= u.front()) return cdf.front();
    if (x >= u.back()) return cdf.back();
    const auto it = std::upper_bound(u.begin(), u.end(), x);
    const std::size_t hi = std::size_t(it - u.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - u[lo]) / (u[hi] - u[lo]);
    return cdf[lo] + w * (cdf[hi] - cdf[lo]);
  }

  /// Left limit; differs from evaluate only at empirical atoms.
  double evaluate_left(double x) const {
    if (kind == MeasureKind::Empirical) {
      const auto it = std::lower_bound(atoms.begin(), atoms.end(), x);
      return double(it - atoms.begin()) / double(atoms.size());
    }
    return evaluate(x);
  }
};

struct DirectionSample {
  std::array<double, 3> xi;
  double weight; // spherical area
};

/// Deterministic equal-area product grid on the sphere: uniform in cos(theta)
/// and phi (midpoint rule). The actual count is the nearest product of the
/// two grid sizes; weights sum to 4 pi exactly up to roundoff.
inline std::vector<DirectionSample> sphere_grid(std::size_t n_directions) {
  const std::size_t n_theta = std::max<std::size_t>(1, std::size_t(std::sqrt(double(n_directions) / 2.0) + 0.5));
  const std::size_t n_phi = 2 * n_theta;
  std::vector<DirectionSample> out;
  out.reserve(n_theta * n_phi);
  const double w = 4.0 * M_PI / double(n_theta * n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double c = -1.0 + (2.0 * double(i) + 1.0) / double(n_theta);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * M_PI * (double(j) + 0.5) / double(n_phi);
      out.push_back({{s * std::cos(phi), s * std::sin(phi), c}, w});
    }
  }
  return out;
}

/// Monte Carlo directions, kept behind an explicit seed for cross-checks.
inline std::vector<DirectionSample> sphere_grid_random(std::size_t n_directions,
                                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::vector<DirectionSample> out;
  out.reserve(n_directions);
  const double w = 4.0 * M_PI / double(n_directions);
  for (std::size_t i = 0; i < n_directions; ++i) {
    const double c = unit(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double phi = angle(rng);
    out.push_back({{s * std::cos(phi), s * std::sin(phi), c}, w});
  }
  return out;
}

/// CDF of the limiting measure by spherical quadrature: the weighted fraction
/// of directions with lambda <= u, on a uniform u-grid.
inline MeasureCDF general_cdf(const Ellipsoid& e, const RotationVector& omega,
                              const std::vector<DirectionSample>& directions,
                              std::size_t u_grid = 2001) {
  if (u_grid < 3) throw ConfigError("general_cdf: u grid too small");
  const double w = omega.norm();
  // histogram of normalized frequencies over the grid cells
  std::vector<double> weight_below(u_grid, 0.0);
  const double du = 2.0 / double(u_grid - 1);
  double total = 0;
  std::vector<double> partial(directions.size());
  parallel_for(directions.size(), [&](std::size_t i) {
    partial[i] = lambda_direction(e, omega, directions[i].xi) / w;
  });
  for (std::size_t i = 0; i < directions.size(); ++i) {
    // first grid point >= value
    const double v = partial[i];
    const std::size_t cell =
        std::size_t(std::clamp(std::ceil((v + 1.0) / du), 0.0, double(u_grid - 1)));
    weight_below[cell] += directions[i].weight;
    total += directions[i].weight;
  }
  MeasureCDF out;
  out.kind = MeasureKind::Quadrature;
  out.source_count = directions.size();
  out.u.resize(u_grid);
  out.cdf.resize(u_grid);
  double acc = 0;
  for (std::size_t k = 0; k < u_grid; ++k) {
    acc += weight_below[k];
    out.u[k] = -1.0 + double(k) * du;
    out.cdf[k] = acc / total;
  }
  return out;
}

inline MeasureCDF general_cdf(const Ellipsoid& e, const RotationVector& omega,
                              std::size_t n_directions, std::size_t u_grid = 2001) {
  if (n_directions < 10000)
    throw ConfigError("general_cdf: at least 10^4 directions are required");
  return general_cdf(e, omega, sphere_grid(n_directions), u_grid);
}

/// Closed-form axisymmetric CDF sampled on the same uniform grid.
inline MeasureCDF axisym_cdf_sampled(double a, std::size_t u_grid = 2001) {
  MeasureCDF out;
  out.kind = MeasureKind::ClosedForm;
  out.u.resize(u_grid);
  out.cdf.resize(u_grid);
  for (std::size_t k = 0; k < u_grid; ++k) {
    const double u = -1.0 + 2.0 * double(k) / double(u_grid - 1);
    out.u[k] = u;
    out.cdf[k] = axisym_cdf(a, u);
  }
  return out;
}

/// Right-continuous empirical CDF of a normalized eigenvalue multiset.
inline MeasureCDF empirical_cdf(std::vector<double> eigenvalues, double omega_norm) {
  if (eigenvalues.empty()) throw ConfigError("empirical_cdf: empty eigenvalue list");
  MeasureCDF out;
  out.kind = MeasureKind::Empirical;
  for (auto& ev : eigenvalues) ev /= omega_norm;
  std::sort(eigenvalues.begin(), eigenvalues.end());
  out.atoms = std::move(eigenvalues);
  out.source_count = out.atoms.size();
  return out;
}

/// Sup-norm distance between two CDFs, evaluated at every step point (both
/// one-sided limits) and every grid point of either argument.
inline double ks_distance(const MeasureCDF& f, const MeasureCDF& g) {
  double sup = 0;
  auto probe = [&](double x) {
    sup = std::max(sup, std::abs(f.evaluate(x) - g.evaluate(x)));
    sup = std::max(sup, std::abs(f.evaluate_left(x) - g.evaluate_left(x)));
  };
  for (double x : f.atoms) probe(x);
  for (double x : g.atoms) probe(x);
  for (double x : f.u) probe(x);
  for (double x : g.u) probe(x);
  return sup;
}

} // namespace poincare
