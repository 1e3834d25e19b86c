// Command-line front end: reproducible spectrum, measure, comparison,
// geostrophic, ray, Legendre/Weyl and mode-field runs over one configuration.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "poincare/basis.hpp"
#include "poincare/block_basis.hpp"
#include "poincare/eigen_solver.hpp"
#include "poincare/geokernel.hpp"
#include "poincare/io.hpp"
#include "poincare/legendre.hpp"
#include "poincare/measure.hpp"
#include "poincare/raydyn.hpp"
#include "poincare/spectrum.hpp"

namespace {

using namespace poincare;
namespace fs = std::filesystem;

std::vector<Rational> parse_rational_triple(const std::string& text, const char* what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.size() != 3) throw ConfigError(std::string(what) + " must have three components");
  return out;
}

struct RunConfig {
  std::string axes = "1,1,1";
  std::string quadric;
  std::string omega = "0,0,1";
  int n = 4;
  int precision_bits = 53;
  int coriolis_factor = 1;
  std::size_t directions = 1000000;
  std::size_t ugrid = 2001;
  std::string out_dir = ".";
  std::int64_t seed = -1;
  bool gnuplot = false;

  Ellipsoid ellipsoid() const {
    if (!quadric.empty()) {
      const auto q = parse_rational_triple(quadric, "--quadric");
      return Ellipsoid::from_coefficients(q[0], q[1], q[2]);
    }
    const auto a = parse_rational_triple(axes, "--axes");
    return Ellipsoid::from_semi_axes(a[0], a[1], a[2]);
  }

  RotationVector rotation() const {
    const auto w = parse_rational_triple(omega, "--omega");
    return RotationVector(w[0], w[1], w[2]);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["axes"] = axes;
    if (!quadric.empty()) j["quadric"] = quadric;
    j["omega"] = omega;
    j["n"] = n;
    j["precision_bits"] = precision_bits;
    j["coriolis_factor"] = coriolis_factor;
    j["directions"] = directions;
    j["ugrid"] = ugrid;
    j["out"] = out_dir;
    if (seed >= 0) j["seed"] = seed;
    return j;
  }

  std::string path(const std::string& name) const {
    fs::create_directories(out_dir);
    return (fs::path(out_dir) / name).string();
  }
};

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--axes", cfg.axes, "semi-axes a1,a2,a3 as exact rationals (\"p/q\")");
  cmd->add_option("--quadric", cfg.quadric,
                  "quadric coefficients A1,A2,A3 as exact rationals (alternative to --axes)");
  cmd->add_option("--omega", cfg.omega, "rotation vector as exact rationals");
  cmd->add_option("--n", cfg.n, "maximum polynomial degree");
  cmd->add_option("--precision-bits", cfg.precision_bits, "working significand bits (>=53)");
  cmd->add_option("--coriolis-factor", cfg.coriolis_factor, "Coriolis convention factor (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  cmd->add_option("--directions", cfg.directions, "spherical quadrature direction count");
  cmd->add_option("--ugrid", cfg.ugrid, "frequency grid resolution");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--seed", cfg.seed, "Monte Carlo seed (enables random directions)");
  cmd->add_flag("--gnuplot", cfg.gnuplot, "also emit a gnuplot script next to the data");
}

nlohmann::json manifest_header(const RunConfig& cfg) {
  nlohmann::json m;
  m["tool"] = "poincare";
  m["version"] = "1.0.0";
  m["config"] = cfg.to_json();
  m["ellipsoid"] = ellipsoid_to_json(cfg.ellipsoid());
  m["rotation"] = rotation_to_json(cfg.rotation());
  return m;
}

int run_spectrum(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto e = cfg.ellipsoid();
  const auto omega = cfg.rotation();

  SpectrumOptions opt;
  opt.n_max = cfg.n;
  opt.coriolis_factor = cfg.coriolis_factor;
  opt.solve.precision_bits = cfg.precision_bits;
  BasisStack stack(e);
  const auto result = spectrum(stack, omega, opt);

  std::ofstream per_degree(cfg.path("spectrum.csv"));
  write_spectrum_csv(per_degree, result);
  std::ofstream cumulative(cfg.path("cumulative.csv"));
  write_spectrum_csv(cumulative, result.cumulative);

  auto manifest = manifest_header(cfg);
  manifest["omega_norm"] = result.omega_norm;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& blk : result.blocks) {
    nlohmann::json b;
    b["degree"] = blk.degree;
    b["dimension"] = blk.eigenvalues.size();
    b["precision_bits"] = blk.precision_bits;
    b["gram_condition"] = blk.gram_condition;
    b["max_residual"] = blk.max_residual;
    b["numerically_zero"] = blk.zero_count;
    blocks.push_back(b);
  }
  manifest["blocks"] = blocks;
  manifest["total_eigenvalues"] = result.cumulative.eigenvalues.size();
  manifest["wall_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file(cfg.path("run_manifest.json"), manifest.dump(2) + "\n");

  if (cfg.gnuplot)
    write_file(cfg.path("spectrum.gp"),
               "set datafile separator ','\n"
               "set xlabel 'degree'\nset ylabel 'lambda'\n"
               "plot 'spectrum.csv' every ::1 using 1:3 with points pt 7 ps 0.4 notitle\n");
  std::cout << "spectrum: " << result.cumulative.eigenvalues.size() << " eigenvalues over "
            << cfg.n << " degrees -> " << cfg.path("spectrum.csv") << "\n";
  return 0;
}

int run_measure(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto e = cfg.ellipsoid();
  const auto omega = cfg.rotation();

  const bool axisymmetric = e.coefficient(0) == e.coefficient(1) && omega.is_axis_aligned(2);
  auto manifest = manifest_header(cfg);

  if (axisymmetric) {
    const double a = to_double(e.coefficient(2) / e.coefficient(0));
    const auto cdf = axisym_cdf_sampled(a, cfg.ugrid);
    std::ofstream os(cfg.path("measure.csv"));
    write_measure_csv(os, cdf);
    manifest["kind"] = "closed-form";
    manifest["a_ratio"] = a;
  }
  const bool want_quadrature = !axisymmetric || cfg.seed >= 0;
  if (want_quadrature) {
    const auto grid = cfg.seed >= 0 ? sphere_grid_random(cfg.directions, std::uint64_t(cfg.seed))
                                    : sphere_grid(cfg.directions);
    const auto cdf = general_cdf(e, omega, grid, cfg.ugrid);
    std::ofstream os(cfg.path(axisymmetric ? "measure_quadrature.csv" : "measure.csv"));
    write_measure_csv(os, cdf);
    manifest["kind"] = axisymmetric ? "closed-form+quadrature" : "quadrature";
    manifest["directions_used"] = cdf.source_count;
  }
  manifest["wall_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file(cfg.path("measure_manifest.json"), manifest.dump(2) + "\n");
  if (cfg.gnuplot)
    write_file(cfg.path("measure.gp"),
               "set datafile separator ','\n"
               "set xlabel 'u'\nset ylabel 'cdf / density'\n"
               "plot 'measure.csv' every ::1 using 1:2 with lines title 'cdf', \\\n"
               "     'measure.csv' every ::1 using 1:3 with lines title 'density'\n");
  std::cout << "measure -> " << cfg.path("measure.csv") << "\n";
  return 0;
}

int run_compare(const RunConfig& cfg, const std::string& spectrum_csv) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto e = cfg.ellipsoid();
  const auto omega = cfg.rotation();

  std::vector<double> eigenvalues;
  if (!spectrum_csv.empty()) {
    std::ifstream is(spectrum_csv);
    if (!is) throw ConfigError("cannot read spectrum CSV: " + spectrum_csv);
    std::string line;
    std::getline(is, line); // header
    while (std::getline(is, line)) {
      std::stringstream ss(line);
      std::string field;
      std::getline(ss, field, ','); // degree
      std::getline(ss, field, ','); // index
      std::getline(ss, field, ','); // lambda
      eigenvalues.push_back(std::stod(field));
    }
  } else {
    SpectrumOptions opt;
    opt.n_max = cfg.n;
    opt.coriolis_factor = cfg.coriolis_factor;
    opt.solve.precision_bits = cfg.precision_bits;
    opt.solve.want_vectors = false;
    const auto result = spectrum(e, omega, opt);
    eigenvalues = result.cumulative.eigenvalues;
  }
  const auto empirical = empirical_cdf(eigenvalues, omega.norm() * cfg.coriolis_factor);

  const bool axisymmetric = e.coefficient(0) == e.coefficient(1) && omega.is_axis_aligned(2);
  MeasureCDF model;
  if (axisymmetric) {
    model = axisym_cdf_sampled(to_double(e.coefficient(2) / e.coefficient(0)), cfg.ugrid);
  } else {
    model = general_cdf(e, omega, cfg.directions, cfg.ugrid);
  }
  const double ks = ks_distance(empirical, model);

  auto report = manifest_header(cfg);
  report["ks"] = ks;
  report["n_eigenvalues"] = eigenvalues.size();
  report["n_directions"] = axisymmetric ? 0 : cfg.directions;
  report["model"] = axisymmetric ? "closed-form" : "quadrature";
  report["wall_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file(cfg.path("compare.json"), report.dump(2) + "\n");

  std::ofstream os(cfg.path("compare_model.csv"));
  write_measure_csv(os, model);
  std::cout << "compare: KS = " << ks << " (" << eigenvalues.size() << " eigenvalues) -> "
            << cfg.path("compare.json") << "\n";
  return 0;
}

int run_geostrophic(const RunConfig& cfg) {
  const auto e = cfg.ellipsoid();
  const auto omega = cfg.rotation();
  BasisStack stack(e);
  stack.extend_to(cfg.n);

  auto report = manifest_header(cfg);
  nlohmann::json counts = nlohmann::json::array();
  for (int n = 1; n <= cfg.n; ++n) {
    const auto pencil = assemble_block(stack, n, omega, cfg.coriolis_factor);
    nlohmann::json entry;
    entry["degree"] = n;
    entry["kernel_dimension"] = geostrophic_count(pencil);
    counts.push_back(entry);
  }
  report["counts"] = counts;

  if (omega.is_axis_aligned(2)) {
    const auto quadric = quadric_from_axis_aligned(e);
    const auto op = v_operator(quadric);
    const auto form = invariant_quadratic(op);
    report["delta"] = format_rational(quadric.delta());
    report["v_operator"] = {{format_rational(op.m(0, 0)), format_rational(op.m(0, 1))},
                            {format_rational(op.m(1, 0)), format_rational(op.m(1, 1))}};
    report["invariant_quadratic"] = {{format_rational(form(0, 0)), format_rational(form(0, 1))},
                                     {format_rational(form(1, 0)), format_rational(form(1, 1))}};
  }
  write_file(cfg.path("geostrophic.json"), report.dump(2) + "\n");
  std::cout << "geostrophic counts written -> " << cfg.path("geostrophic.json") << "\n";
  return 0;
}

int run_rays(const RunConfig& cfg, const std::string& x0, const std::string& xi0, int branch,
             int reflections) {
  const auto e = cfg.ellipsoid();
  const auto omega = cfg.rotation();
  const auto xs = parse_rational_triple(x0, "--x0");
  const auto xis = parse_rational_triple(xi0, "--xi0");
  RayState state;
  for (int i = 0; i < 3; ++i) {
    state.position[std::size_t(i)] = to_double(xs[std::size_t(i)]);
    state.covector[std::size_t(i)] = to_double(xis[std::size_t(i)]);
  }
  state.branch = branch;
  const auto trajectory = trace(e, omega, state, reflections);
  std::ofstream os(cfg.path("trajectory.csv"));
  write_trajectory_csv(os, trajectory);
  const char* status = trajectory.status == RayTermination::MaxReflections ? "max-reflections"
                       : trajectory.status == RayTermination::Glancing     ? "glancing"
                                                                           : "degenerate";
  std::cout << "rays: " << trajectory.events.size() - 1 << " reflections, status " << status
            << " -> " << cfg.path("trajectory.csv") << "\n";
  return 0;
}

int run_legendre(const RunConfig& cfg) {
  const auto e = cfg.ellipsoid();
  OrthoBuilder builder(e);
  builder.extend_to(cfg.n);

  auto report = manifest_header(cfg);
  nlohmann::json degrees = nlohmann::json::array();
  bool all_pass = true;
  for (int n = 0; n <= cfg.n; ++n) {
    const bool pass = eigenrelation_check(e, builder.space(n));
    all_pass = all_pass && pass;
    nlohmann::json entry;
    entry["degree"] = n;
    entry["dimension"] = builder.space(n).elements.size();
    entry["eigenvalue"] = format_rational(legendre_eigenvalue(n));
    entry["exact_eigenrelation"] = pass;
    degrees.push_back(entry);
  }
  report["eigenrelation"] = degrees;
  write_file(cfg.path("legendre.json"), report.dump(2) + "\n");

  std::vector<double> sqrt_lambdas;
  for (int s = 5; s <= 600; s += 5) sqrt_lambdas.push_back(double(s));
  std::ofstream os(cfg.path("weyl.csv"));
  write_weyl_csv(os, sqrt_lambdas);

  if (!all_pass) throw InvariantViolation("legendre eigenrelation failed");
  std::cout << "legendre: eigenrelation exact for degrees 0.." << cfg.n << " -> "
            << cfg.path("legendre.json") << "\n";
  return 0;
}

int run_mode_field(const RunConfig& cfg, int degree, std::size_t index, std::size_t grid) {
  const auto e = cfg.ellipsoid();
  const auto omega = cfg.rotation();
  BasisStack stack(e);
  stack.extend_to(degree);
  SolveOptions solve;
  solve.precision_bits = cfg.precision_bits;
  const auto pencil = assemble_block(stack, degree, omega, cfg.coriolis_factor);
  const auto block = solve_pencil(pencil, omega.norm(), solve);
  if (index >= block.eigenvalues.size())
    throw ConfigError("mode index out of range for this degree block");
  GridSpec spec;
  spec.points_per_axis = grid;
  const auto samples = mode_field(stack, block, index, spec);
  std::ofstream os(cfg.path("mode_field.csv"));
  write_mode_field_csv(os, samples);
  std::cout << "mode-field: lambda = " << format_g17(block.eigenvalues[index]) << ", "
            << samples.size() << " samples -> " << cfg.path("mode_field.csv") << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inertial-mode spectra of rotating ellipsoids: exact rational Galerkin pencils, "
               "asymptotic spectral measures, geostrophic kernels, orthogonal polynomials and "
               "ray dynamics"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string spectrum_csv, x0 = "1/10,0,3/10", xi0 = "1,0,2";
  int branch = 1, reflections = 1000;
  int mf_degree = 2;
  std::size_t mf_index = 0, mf_grid = 33;

  auto* spectrum_cmd = app.add_subcommand("spectrum", "per-degree and cumulative eigenvalues");
  add_common_flags(spectrum_cmd, cfg);
  auto* measure_cmd = app.add_subcommand("measure", "limiting spectral measure CDF/density");
  add_common_flags(measure_cmd, cfg);
  auto* compare_cmd =
      app.add_subcommand("compare", "KS distance between a computed spectrum and the limit law");
  add_common_flags(compare_cmd, cfg);
  compare_cmd->add_option("--spectrum-csv", spectrum_csv,
                          "reuse eigenvalues from a spectrum CSV instead of recomputing");
  auto* geostrophic_cmd =
      app.add_subcommand("geostrophic", "exact kernel counts and the planar operator");
  add_common_flags(geostrophic_cmd, cfg);
  auto* rays_cmd = app.add_subcommand("rays", "ray tracing with conserved-quantity logging");
  add_common_flags(rays_cmd, cfg);
  rays_cmd->add_option("--x0", x0, "initial position (rationals)");
  rays_cmd->add_option("--xi0", xi0, "initial covector (rationals)");
  rays_cmd->add_option("--branch", branch, "initial branch sign (+1 or -1)")
      ->check(CLI::IsMember({1, -1}));
  rays_cmd->add_option("--reflections", reflections, "maximum reflection count");
  auto* legendre_cmd =
      app.add_subcommand("legendre", "orthogonal-polynomial eigenrelation and the Weyl counting");
  add_common_flags(legendre_cmd, cfg);
  auto* mode_cmd = app.add_subcommand("mode-field", "sampled velocity field of one eigenmode");
  add_common_flags(mode_cmd, cfg);
  mode_cmd->add_option("--degree", mf_degree, "degree block");
  mode_cmd->add_option("--index", mf_index, "eigenvalue index within the block");
  mode_cmd->add_option("--grid", mf_grid, "grid points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum_cmd->parsed()) return run_spectrum(cfg);
    if (measure_cmd->parsed()) return run_measure(cfg);
    if (compare_cmd->parsed()) return run_compare(cfg, spectrum_csv);
    if (geostrophic_cmd->parsed()) return run_geostrophic(cfg);
    if (rays_cmd->parsed()) return run_rays(cfg, x0, xi0, branch, reflections);
    if (legendre_cmd->parsed()) return run_legendre(cfg);
    if (mode_cmd->parsed()) return run_mode_field(cfg, mf_degree, mf_index, mf_grid);
  } catch (const ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const InvariantViolation& ex) {
    std::cerr << "invariant violation: " << ex.what() << "\n";
    return 4;
  } catch (const NumericalError& ex) {
    std::cerr << "numerical failure: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
