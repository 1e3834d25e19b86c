#pragma once

#include <array>
#include <complex>
#include <map>
#include <vector>

#include "poincare/block_basis.hpp"
#include "poincare/eigen_solver.hpp"
#include "poincare/pencil.hpp"

namespace poincare {

struct SpectrumOptions {
  int n_max = 4;
  int coriolis_factor = 1;
  SolveOptions solve;
};

struct SpectrumResult {
  std::vector<SpectralBlock> blocks; // degrees 1..n_max
  SpectralBlock cumulative;          // sorted union with per-eigenvalue source degree
  double omega_norm = 1;
};

/// Per-degree solve on the exact W_k pencils; the cumulative multiset is the
/// union of the blocks. Every solved block is invariant-checked (count,
/// symmetry, containment).
inline SpectrumResult spectrum(BasisStack& stack, const RotationVector& omega,
                               const SpectrumOptions& opt) {
  if (opt.n_max < 1) throw ConfigError("spectrum: n_max must be >= 1");
  stack.extend_to(opt.n_max);
  SpectrumResult out;
  out.omega_norm = omega.norm();

  for (int k = 1; k <= opt.n_max; ++k) {
    const auto pencil = assemble_block(stack, k, omega, opt.coriolis_factor);
    SpectralBlock block = solve_pencil(pencil, out.omega_norm, opt.solve);
    check_block_invariants(block, out.omega_norm, dim_wn(k), opt.coriolis_factor);
    out.blocks.push_back(std::move(block));
  }

  auto& cum = out.cumulative;
  cum.cumulative = true;
  cum.degree = opt.n_max;
  std::vector<std::size_t> order;
  std::vector<std::pair<double, std::pair<int, double>>> all; // (lambda, (degree, residual))
  for (const auto& blk : out.blocks)
    for (std::size_t i = 0; i < blk.eigenvalues.size(); ++i)
      all.push_back({blk.eigenvalues[i],
                     {blk.degree, blk.residuals.empty() ? 0.0 : blk.residuals[i]}});
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [lambda, meta] : all) {
    cum.eigenvalues.push_back(lambda);
    cum.source_degree.push_back(meta.first);
    cum.residuals.push_back(meta.second);
  }
  cum.precision_bits = 0;
  for (const auto& blk : out.blocks) {
    cum.precision_bits = std::max(cum.precision_bits, blk.precision_bits);
    cum.gram_condition = std::max(cum.gram_condition, blk.gram_condition);
    cum.max_residual = std::max(cum.max_residual, blk.max_residual);
    cum.zero_count += blk.zero_count;
    cum.solve_seconds += blk.solve_seconds;
  }
  return out;
}

inline SpectrumResult spectrum(const Ellipsoid& e, const RotationVector& omega,
                               const SpectrumOptions& opt) {
  BasisStack stack(e);
  return spectrum(stack, omega, opt);
}

struct ModeSample {
  std::array<double, 3> position;
  std::array<std::complex<double>, 3> velocity;
  double magnitude = 0;
};

struct GridSpec {
  std::size_t points_per_axis = 33;
};

/// Evaluates the eigenmode v = sum_j alpha_j w_j of one solved block on a
/// regular grid clipped to the ellipsoid. Normalization: max magnitude = 1.
inline std::vector<ModeSample> mode_field(const BasisStack& stack, const SpectralBlock& block,
                                          std::size_t eigen_index, const GridSpec& grid = {}) {
  if (block.cumulative) throw ConfigError("mode_field: needs a per-degree block");
  if (block.eigenvectors.empty())
    throw ConfigError("mode_field: block was solved without eigenvectors");
  const auto& alpha = block.eigenvectors.at(eigen_index);
  const auto& blk = stack.block(block.degree);

  // combine basis fields into one complex-coefficient field
  std::map<std::pair<int, std::uint64_t>, std::complex<double>> combined;
  std::map<std::uint64_t, MultiIndex> key_to_mono;
  for (std::size_t j = 0; j < blk.size(); ++j) {
    const std::complex<double> c = alpha[j];
    for (int comp = 0; comp < 3; ++comp)
      for (const auto& [m, coeff] : blk.fields[j][comp].terms()) {
        combined[{comp, grlex_key(m)}] += c * to_double(coeff);
        key_to_mono.emplace(grlex_key(m), m);
      }
  }

  const auto& e = stack.ellipsoid();
  const std::array<double, 3> semi = {e.semi_axis_double(0), e.semi_axis_double(1),
                                      e.semi_axis_double(2)};
  const std::size_t npts = grid.points_per_axis;
  std::vector<ModeSample> samples;
  double max_mag = 0;
  for (std::size_t ix = 0; ix < npts; ++ix)
    for (std::size_t iy = 0; iy < npts; ++iy)
      for (std::size_t iz = 0; iz < npts; ++iz) {
        const double x = semi[0] * (-1.0 + 2.0 * double(ix) / double(npts - 1));
        const double y = semi[1] * (-1.0 + 2.0 * double(iy) / double(npts - 1));
        const double z = semi[2] * (-1.0 + 2.0 * double(iz) / double(npts - 1));
        if (e.quadric_value(x, y, z) < 0) continue;
        ModeSample s;
        s.position = {x, y, z};
        for (const auto& [key, c] : combined) {
          const auto m = key_to_mono.at(key.second);
          double mono = 1;
          for (unsigned t = 0; t < m.p; ++t) mono *= x;
          for (unsigned t = 0; t < m.q; ++t) mono *= y;
          for (unsigned t = 0; t < m.r; ++t) mono *= z;
          s.velocity[std::size_t(key.first)] += c * mono;
        }
        double mag2 = 0;
        for (const auto& vc : s.velocity) mag2 += std::norm(vc);
        s.magnitude = std::sqrt(mag2);
        max_mag = std::max(max_mag, s.magnitude);
        samples.push_back(std::move(s));
      }
  if (max_mag > 0) {
    for (auto& s : samples) {
      for (auto& vc : s.velocity) vc /= max_mag;
      s.magnitude /= max_mag;
    }
  }
  return samples;
}

} // namespace poincare
