#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "poincare/errors.hpp"
#include "poincare/geometry.hpp"

namespace poincare {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline Vec3 axpy(const Vec3& a, double s, const Vec3& b) {
  return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
}

namespace detail {

// The ray kernels and the trajectory state run in extended precision: the
// covector norm spikes at shallow-incidence reflections and the conserved
// quantities are the small difference of its large squares, so 64-bit
// mantissas keep the long-run drift orders of magnitude below the logged
// double values.
using XReal = long double;
using XVec3 = std::array<XReal, 3>;

inline XVec3 widen(const Vec3& a) { return {a[0], a[1], a[2]}; }
inline Vec3 narrow(const XVec3& a) { return {double(a[0]), double(a[1]), double(a[2])}; }
inline XReal xdot(const XVec3& a, const XVec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline XReal xnorm(const XVec3& a) { return sqrtl(xdot(a, a)); }
inline XVec3 xaxpy(const XVec3& a, XReal s, const XVec3& b) {
  return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
}
inline XVec3 xscaled(const XVec3& a, XReal s) { return {a[0] * s, a[1] * s, a[2] * s}; }

struct RayFrame {
  XVec3 axis{0, 0, 1}; // unit rotation direction
  XReal omega = 1;     // ||Omega||
  XVec3 coeff{1, 1, 1}; // quadric coefficients A_i
};

inline RayFrame make_frame(const Ellipsoid& e) {
  RayFrame f;
  f.coeff = {e.coefficient_double(0), e.coefficient_double(1), e.coefficient_double(2)};
  return f;
}

inline RayFrame make_frame(const Ellipsoid& e, const RotationVector& omega) {
  RayFrame f = make_frame(e);
  const auto u = omega.unit();
  f.axis = {u[0], u[1], u[2]};
  f.omega = omega.norm();
  return f;
}

inline XReal xlambda1(const RayFrame& f, const XVec3& xi) {
  return f.omega * xdot(f.axis, xi) / xnorm(xi);
}

inline XReal xsigma(const RayFrame& f, const XVec3& x, const XVec3& xi) {
  XReal s = 0;
  for (int i = 0; i < 3; ++i) s += xi[std::size_t(i)] * xi[std::size_t(i)] / f.coeff[std::size_t(i)];
  const XReal p = xdot(x, xi);
  return s - p * p;
}

inline XVec3 xvelocity(const RayFrame& f, const XVec3& xi, int branch, double epsilon) {
  const XReal n2 = xdot(xi, xi);
  const XReal nx = sqrtl(n2);
  const XReal z = xdot(f.axis, xi);
  XVec3 v = xaxpy(xscaled(f.axis, n2), -z, xi);
  v = xscaled(v, XReal(branch) * f.omega / (n2 * nx));
  if (xnorm(v) < XReal(epsilon) * f.omega)
    throw CharacteristicDirection("group velocity vanished");
  return v;
}

inline std::pair<XVec3, XReal> xadvance(const RayFrame& f, const XVec3& x, const XVec3& v) {
  XReal a = 0, b = 0, c = 1;
  for (int i = 0; i < 3; ++i) {
    const XReal ai = f.coeff[std::size_t(i)];
    a -= ai * v[std::size_t(i)] * v[std::size_t(i)];
    b -= 2 * ai * x[std::size_t(i)] * v[std::size_t(i)];
    c -= ai * x[std::size_t(i)] * x[std::size_t(i)];
  }
  const XReal disc = b * b - 4 * a * c;
  if (a == 0 || disc < 0) throw NoForwardIntersection("no boundary hit along the ray");
  const XReal sq = sqrtl(disc);
  const XReal q = XReal(-0.5) * (b + (b >= 0 ? sq : -sq));
  XReal t1 = q / a, t2 = (q != 0) ? c / q : q / a;
  if (t1 > t2) std::swap(t1, t2);
  // the forward exit is the larger root; the smaller one is behind the start
  // or the roundoff ghost of a boundary start
  XReal t = t2;
  if (!(t > 0)) throw NoForwardIntersection("no forward boundary hit");
  for (int iter = 0; iter < 3; ++iter) {
    const XReal dg = b + 2 * a * t;
    if (dg == 0) break;
    const XReal step = (c + t * (b + t * a)) / dg;
    t -= step;
    if (fabsl(step) < XReal(1e-22) * fabsl(t)) break;
  }
  return {xaxpy(x, t, v), t};
}

inline std::pair<XVec3, int> xreflect(const RayFrame& f, const XVec3& m, const XVec3& xi,
                                      XReal lambda, double glancing_eps) {
  const XReal lhat = lambda / f.omega;
  XVec3 nrm;
  for (int i = 0; i < 3; ++i)
    nrm[std::size_t(i)] = -2 * f.coeff[std::size_t(i)] * m[std::size_t(i)];

  if (fabsl(lhat) < XReal(glancing_eps)) return {xi, 0};

  const XReal zn = xdot(f.axis, nrm);
  const XReal zx = xdot(f.axis, xi);
  const XReal l2 = lhat * lhat;
  const XReal a = zn * zn - l2 * xdot(nrm, nrm);
  const XReal b = 2 * (zx * zn - l2 * xdot(xi, nrm));
  // a ~ 0 means the conormal sits on the frequency cone: the nonzero root
  // escapes to infinity (characteristic boundary point)
  const XReal a_scale = zn * zn + l2 * xdot(nrm, nrm);
  if (fabsl(a) <= XReal(glancing_eps) * a_scale || b == 0)
    throw GlancingReflection("degenerate reflection quadratic");
  const XReal s = -b / a;
  if (fabsl(s) * xnorm(nrm) <= XReal(glancing_eps) * xnorm(xi))
    throw GlancingReflection("coincident reflection roots");
  XVec3 out = xaxpy(xi, s, nrm);
  // re-impose the shell exactly: keep the transverse part, reset the axis
  // component, so |Lambda_1| cannot drift across many reflections
  const XReal z = xdot(f.axis, out);
  const XVec3 perp = xaxpy(out, -z, f.axis);
  const XReal pn = xnorm(perp);
  const XReal l2c = 1 - l2;
  if (pn > 0 && l2c > 0) {
    const XReal zt = (z >= 0 ? 1 : -1) * fabsl(lhat) * pn / sqrtl(l2c);
    out = xaxpy(perp, zt, f.axis);
  }
  const XReal l1 = xlambda1(f, out);
  if (fabsl(l1) < XReal(glancing_eps) * f.omega)
    throw GlancingReflection("outgoing covector on the kernel");
  const int branch = (lambda >= 0) == (l1 >= 0) ? 1 : -1;
  // the outgoing group velocity must point strictly inward
  const XVec3 v = xvelocity(f, out, branch, 1e-300);
  if (!(xdot(v, nrm) > 0)) throw GlancingReflection("reflected ray is not inward");
  return {out, branch};
}

} // namespace detail

/// Hamiltonian value Lambda_1(xi) = <Omega, xi> / ||xi||.
inline double lambda1(const RotationVector& omega, const Vec3& xi) {
  const detail::XVec3 w{to_double(omega.component(0)), to_double(omega.component(1)),
                        to_double(omega.component(2))};
  const auto x = detail::widen(xi);
  return double(detail::xdot(w, x) / detail::xnorm(x));
}

/// Conserved symbol of the anisotropic Legendre operator:
/// sigma(L_E)(x, xi) = sum xi_i^2 / A_i - <x, xi>^2.
inline double sigma_legendre(const Ellipsoid& e, const Vec3& x, const Vec3& xi) {
  const auto f = detail::make_frame(e);
  return double(detail::xsigma(f, detail::widen(x), detail::widen(xi)));
}

/// Group velocity of the branch Hamiltonian s * Lambda_1, orthogonal to xi;
/// degenerates when xi is parallel to Omega.
inline Vec3 group_velocity(const RotationVector& omega, const Vec3& xi, int branch,
                           double epsilon = 1e-12) {
  detail::RayFrame f;
  const auto u = omega.unit();
  f.axis = {u[0], u[1], u[2]};
  f.omega = omega.norm();
  return detail::narrow(detail::xvelocity(f, detail::widen(xi), branch, epsilon));
}

/// Straight advance to the boundary: smallest forward crossing of F = 0,
/// Newton-polished.
inline std::pair<Vec3, double> advance_to_boundary(const Ellipsoid& e, const Vec3& x,
                                                   const Vec3& v) {
  const auto f = detail::make_frame(e);
  auto [hit, t] = detail::xadvance(f, detail::widen(x), detail::widen(v));
  return {detail::narrow(hit), double(t)};
}

/// Reflection at a boundary point m: the jump is along the conormal
/// grad F(m), the tangential pullback of xi is preserved, and the frequency
/// shell <unit(Omega), xi>^2 = (lambda/omega)^2 ||xi||^2 is re-imposed with
/// the nonzero root. Returns the outgoing covector and the branch consistent
/// with the conserved frequency (0 for lambda = 0: the ray retraces its
/// chord and the caller flips the previous branch).
inline std::pair<Vec3, int> reflect(const Ellipsoid& e, const RotationVector& omega,
                                    const Vec3& m, const Vec3& xi, double lambda,
                                    double glancing_eps = 1e-12) {
  const auto f = detail::make_frame(e, omega);
  auto [out, branch] =
      detail::xreflect(f, detail::widen(m), detail::widen(xi), lambda, glancing_eps);
  return {detail::narrow(out), branch};
}

enum class RayTermination { MaxReflections, Glancing, Degenerate };

struct RayEvent {
  int index = 0;
  double time = 0;
  Vec3 position{};
  Vec3 covector{};
  int branch = 1;
  double lambda1_abs = 0;
  double sigma = 0;
};

struct RayState {
  Vec3 position{};
  Vec3 covector{};
  int branch = 1;
  double time = 0;
};

struct Trajectory {
  double frequency = 0; // branch * Lambda_1 at launch, constant thereafter
  std::vector<RayEvent> events;
  RayTermination status = RayTermination::MaxReflections;
};

/// Alternating advance/reflect loop with per-event invariant logging.
inline Trajectory trace(const Ellipsoid& e, const RotationVector& omega, RayState state,
                        int max_reflections) {
  using namespace detail;
  const RayFrame frame = make_frame(e, omega);
  XVec3 position = widen(state.position);
  XVec3 covector = widen(state.covector);
  int branch = state.branch;
  XReal time = state.time;

  Trajectory out;
  const XReal frequency = XReal(branch) * xlambda1(frame, covector);
  out.frequency = double(frequency);
  if (e.quadric_value(state.position[0], state.position[1], state.position[2]) < 0)
    throw ConfigError("trace: initial position must be inside the ellipsoid");

  auto log_event = [&](int idx) {
    out.events.push_back({idx, double(time), narrow(position), narrow(covector), branch,
                          double(fabsl(xlambda1(frame, covector))),
                          double(xsigma(frame, position, covector))});
  };
  log_event(0);

  const bool zero_frequency = fabsl(frequency) < XReal(1e-12) * frame.omega;
  for (int k = 1; k <= max_reflections; ++k) {
    XVec3 velocity;
    try {
      velocity = xvelocity(frame, covector, branch, 1e-12);
    } catch (const CharacteristicDirection&) {
      out.status = RayTermination::Degenerate;
      return out;
    }
    auto [hit, t] = xadvance(frame, position, velocity);
    position = hit;
    time += t;
    if (zero_frequency) {
      branch = -branch; // retrace the chord
    } else {
      try {
        auto [xi_out, branch_out] = xreflect(frame, hit, covector, frequency, 1e-12);
        covector = xi_out;
        branch = branch_out;
      } catch (const GlancingReflection&) {
        log_event(k);
        out.status = RayTermination::Glancing;
        return out;
      }
    }
    log_event(k);
  }
  out.status = RayTermination::MaxReflections;
  return out;
}

} // namespace poincare
