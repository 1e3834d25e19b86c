#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "poincare/errors.hpp"
#include "poincare/matrix.hpp"
#include "poincare/pencil.hpp"

namespace poincare {

using Float134 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>>;
using Float270 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<81>>;
using Float540 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<162>>;

namespace detail {

template <class Real>
Real stable_hypot(const Real& a, const Real& b) {
  using std::abs;
  using std::sqrt;
  const Real aa = abs(a), ab = abs(b);
  if (aa > ab) {
    const Real r = ab / aa;
    return aa * sqrt(Real(1) + r * r);
  }
  if (ab == Real(0)) return Real(0);
  const Real r = aa / ab;
  return ab * sqrt(Real(1) + r * r);
}

/// In-place lower Cholesky; false when a pivot is not strictly positive.
template <class Real>
bool cholesky_in_place(Matrix<Real>& a) {
  using std::sqrt;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    Real sum = a(k, k);
    for (std::size_t j = 0; j < k; ++j) sum -= a(k, j) * a(k, j);
    if (!(sum > Real(0))) return false;
    const Real pivot = sqrt(sum);
    a(k, k) = pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      Real s = a(i, k);
      for (std::size_t j = 0; j < k; ++j) s -= a(i, j) * a(k, j);
      a(i, k) = s / pivot;
    }
    for (std::size_t j = k + 1; j < n; ++j) a(k, j) = Real(0);
  }
  return true;
}

template <class Real>
void forward_substitute(const Matrix<Real>& l, std::vector<Real>& b) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    Real acc = b[i];
    for (std::size_t j = 0; j < i; ++j) acc -= l(i, j) * b[j];
    b[i] = acc / l(i, i);
  }
}

template <class Real>
void back_substitute_transposed(const Matrix<Real>& l, std::vector<Real>& b) {
  const std::size_t n = l.rows();
  for (std::size_t i = n; i-- > 0;) {
    Real acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= l(j, i) * b[j];
    b[i] = acc / l(i, i);
  }
}

/// C = L^{-1} A L^{-T}, then exact antisymmetrization of the roundoff.
template <class Real>
Matrix<Real> congruence_reduce(const Matrix<Real>& l, const Matrix<Real>& a) {
  const std::size_t n = l.rows();
  Matrix<Real> c = a;
  std::vector<Real> col(n);
  // C <- L^{-1} A (column-wise forward solves)
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = c(i, j);
    forward_substitute(l, col);
    for (std::size_t i = 0; i < n; ++i) c(i, j) = col[i];
  }
  // C <- C L^{-T}  ==  (L^{-1} C^T)^T
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) col[j] = c(i, j);
    forward_substitute(l, col);
    for (std::size_t j = 0; j < n; ++j) c(i, j) = col[j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    c(i, i) = Real(0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Real v = (c(i, j) - c(j, i)) / Real(2);
      c(i, j) = v;
      c(j, i) = -v;
    }
  }
  return c;
}

/// Householder tridiagonalization of an antisymmetric matrix. Antisymmetry is
/// preserved exactly by the rank-2 update C + v p^T - p v^T with p = tau*C*v.
/// Returns the subdiagonal beta[k] = T(k+1, k); accumulates Q when given.
template <class Real>
std::vector<Real> antisym_tridiagonalize(Matrix<Real> c, Matrix<Real>* q_out) {
  using std::abs;
  using std::sqrt;
  const std::size_t n = c.rows();
  Matrix<Real> q;
  if (q_out) q = Matrix<Real>::identity(n);
  std::vector<Real> v(n), p(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    // Householder vector for column k below the diagonal
    Real norm2 = Real(0);
    for (std::size_t i = k + 1; i < n; ++i) norm2 += c(i, k) * c(i, k);
    if (norm2 == Real(0)) continue;
    const Real alpha = sqrt(norm2);
    const Real pivot = c(k + 1, k);
    const Real sign = pivot >= Real(0) ? Real(1) : Real(-1);
    // v = column with pivot shifted; H = I - tau v v^T maps the column to
    // -sign*alpha * e_{k+1}
    for (std::size_t i = 0; i <= k; ++i) v[i] = Real(0);
    v[k + 1] = pivot + sign * alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = c(i, k);
    const Real vtv = Real(2) * (norm2 + pivot * sign * alpha);
    if (vtv == Real(0)) continue;
    const Real tau = Real(2) / vtv;

    // p = tau * C v
    for (std::size_t i = 0; i < n; ++i) {
      Real acc = Real(0);
      for (std::size_t j = k + 1; j < n; ++j) acc += c(i, j) * v[j];
      p[i] = tau * acc;
    }
    // C <- C + v p^T - p v^T
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c(i, j) += v[i] * p[j] - p[i] * v[j];
    if (q_out) {
      // Q <- Q (I - tau v v^T)
      for (std::size_t i = 0; i < n; ++i) {
        Real acc = Real(0);
        for (std::size_t j = k + 1; j < n; ++j) acc += q(i, j) * v[j];
        acc *= tau;
        for (std::size_t j = k + 1; j < n; ++j) q(i, j) -= acc * v[j];
      }
    }
  }
  std::vector<Real> beta(n > 0 ? n - 1 : 0);
  for (std::size_t k = 0; k + 1 < n; ++k) beta[k] = c(k + 1, k);
  if (q_out) *q_out = std::move(q);
  return beta;
}

/// Golub-Kahan-Reinsch SVD of a square upper bidiagonal matrix:
/// diag d[0..m-1], superdiagonal in rv[1..m-1] (rv[0] unused). On return d
/// holds the singular values (non-negative, unsorted) and B = U diag(d) V^T.
template <class Real>
void bidiagonal_svd(std::vector<Real>& d, std::vector<Real>& rv, Matrix<Real>& u,
                    Matrix<Real>& v) {
  using std::abs;
  const std::size_t m = d.size();
  if (m == 0) return;
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real anorm = Real(0);
  for (std::size_t i = 0; i < m; ++i) {
    const Real t = abs(d[i]) + abs(rv[i]);
    if (t > anorm) anorm = t;
  }
  if (anorm == Real(0)) return;
  const int max_iterations = 40 + std::numeric_limits<Real>::digits;

  auto rotate_cols = [m](Matrix<Real>& mat, std::size_t c1, std::size_t c2, const Real& cos_,
                         const Real& sin_) {
    for (std::size_t r = 0; r < m; ++r) {
      const Real y = mat(r, c1);
      const Real z = mat(r, c2);
      mat(r, c1) = y * cos_ + z * sin_;
      mat(r, c2) = z * cos_ - y * sin_;
    }
  };

  for (std::size_t k = m; k-- > 0;) {
    for (int iteration = 0;; ++iteration) {
      if (iteration > max_iterations)
        throw NumericalError("bidiagonal SVD failed to converge");
      bool flag = true;
      std::size_t l = k + 1;
      std::size_t nm = 0;
      while (l-- > 0) {
        nm = l - 1; // only read when l > 0
        if (l == 0 || abs(rv[l]) <= eps * anorm) {
          flag = false;
          break;
        }
        if (abs(d[nm]) <= eps * anorm) break;
      }
      if (flag) {
        // d[nm] ~ 0: rotate the l..k rows to annihilate rv[l]
        Real c = Real(0), s = Real(1);
        for (std::size_t i = l; i <= k; ++i) {
          const Real f = s * rv[i];
          rv[i] = c * rv[i];
          if (abs(f) <= eps * anorm) break;
          const Real g = d[i];
          const Real h = stable_hypot(f, g);
          d[i] = h;
          c = g / h;
          s = -f / h;
          rotate_cols(u, nm, i, c, s);
        }
      }
      const Real z = d[k];
      if (l == k) {
        if (z < Real(0)) {
          d[k] = -z;
          for (std::size_t r = 0; r < m; ++r) v(r, k) = -v(r, k);
        }
        break;
      }
      // Wilkinson-type shift from the trailing 2x2
      const std::size_t kk = k - 1;
      Real x = d[l];
      Real y = d[kk];
      Real g = rv[kk];
      Real h = rv[k];
      Real f = ((y - z) * (y + z) + (g - h) * (g + h)) / (Real(2) * h * y);
      g = stable_hypot(f, Real(1));
      const Real gs = f >= Real(0) ? g : -g;
      f = ((x - z) * (x + z) + h * (y / (f + gs) - h)) / x;
      // chase the bulge
      Real c = Real(1), s = Real(1);
      for (std::size_t j = l; j <= kk; ++j) {
        const std::size_t i = j + 1;
        g = rv[i];
        y = d[i];
        h = s * g;
        g = c * g;
        Real zz = stable_hypot(f, h);
        rv[j] = zz;
        c = f / zz;
        s = h / zz;
        f = x * c + g * s;
        g = g * c - x * s;
        h = y * s;
        y = y * c;
        rotate_cols(v, j, i, c, s);
        zz = stable_hypot(f, h);
        d[j] = zz;
        if (zz != Real(0)) {
          c = f / zz;
          s = h / zz;
        }
        f = c * g + s * y;
        x = c * y - s * g;
        rotate_cols(u, j, i, c, s);
      }
      rv[l] = Real(0);
      rv[k] = f;
      d[k] = x;
    }
  }
}

} // namespace detail

/// Eigen solution of A alpha = i lambda B alpha in one floating type.
template <class Real>
struct PencilEigen {
  bool cholesky_ok = false;
  std::vector<Real> eigenvalues; // ascending, exact +/- pairs plus zeros
  // complex eigenvector coefficients, one column per eigenvalue
  Matrix<Real> alpha_re, alpha_im;
  std::vector<Real> residuals;
  Real gram_condition = Real(0);
};

namespace detail {

/// lambda_max / lambda_min of the SPD Gram via deterministic power and
/// inverse-power iterations.
template <class Real>
Real gram_condition_estimate(const Matrix<Real>& b, const Matrix<Real>& l) {
  using std::abs;
  using std::sqrt;
  const std::size_t n = b.rows();
  if (n == 1) return Real(1);
  std::vector<Real> x(n, Real(1)), y(n);
  auto normalize = [&](std::vector<Real>& w) {
    Real s = Real(0);
    for (const auto& t : w) s += t * t;
    s = sqrt(s);
    if (s == Real(0)) return s;
    for (auto& t : w) t /= s;
    return s;
  };
  normalize(x);
  Real lambda_max = Real(1);
  for (int it = 0; it < 40; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      Real acc = Real(0);
      for (std::size_t j = 0; j < n; ++j) acc += b(i, j) * x[j];
      y[i] = acc;
    }
    lambda_max = normalize(y);
    x = y;
  }
  std::vector<Real> z(n, Real(1));
  normalize(z);
  Real inv_norm = Real(1);
  for (int it = 0; it < 40; ++it) {
    forward_substitute(l, z);
    back_substitute_transposed(l, z);
    inv_norm = normalize(z);
  }
  return lambda_max * inv_norm;
}

} // namespace detail

/// Structured solve of the exact pencil at one precision: Cholesky B = L L^T,
/// congruence C = L^{-1} A L^{-T} (antisymmetric), antisymmetry-preserving
/// tridiagonalization, and the odd/even similarity that turns iC into +/-
/// singular values of a bidiagonal matrix. Eigenvalues therefore come in
/// exact opposite pairs, plus structural zeros.
template <class Real>
PencilEigen<Real> pencil_eigen(const Matrix<Real>& a0, const Matrix<Real>& b0,
                               bool want_vectors) {
  using std::abs;
  using std::sqrt;
  const std::size_t n = a0.rows();
  PencilEigen<Real> out;

  // diagonal congruence equilibration: (DAD) y = i lambda (DBD) y has the
  // same eigenvalues and tames the Cholesky conditioning of unevenly scaled
  // bases; eigenvectors are rescaled back at the end
  std::vector<Real> equil(n, Real(1));
  for (std::size_t i = 0; i < n; ++i)
    if (b0(i, i) > Real(0)) equil[i] = Real(1) / sqrt(b0(i, i));
  Matrix<Real> a(n, n), b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = equil[i] * a0(i, j) * equil[j];
      b(i, j) = equil[i] * b0(i, j) * equil[j];
    }

  Matrix<Real> l = b;
  if (!detail::cholesky_in_place(l)) return out;
  out.cholesky_ok = true;
  out.gram_condition = detail::gram_condition_estimate(b, l);
  if (n == 0) return out;

  Matrix<Real> c = detail::congruence_reduce(l, a);
  Matrix<Real> q;
  const std::vector<Real> beta = detail::antisym_tridiagonalize(c, want_vectors ? &q : nullptr);

  // S = D^* (-iT) D is real symmetric tridiagonal with zero diagonal and
  // off-diagonal sigma_k = -beta_k; split odd/even into a square upper
  // bidiagonal (padded with a zero row when n is odd).
  const std::size_t m = (n + 1) / 2;
  std::vector<Real> diag(m, Real(0)), super(m, Real(0));
  for (std::size_t j = 0; j < m; ++j) {
    if (2 * j < beta.size()) diag[j] = -beta[2 * j];
    if (j + 1 < m && 2 * j + 1 < beta.size()) super[j + 1] = -beta[2 * j + 1];
  }
  Matrix<Real> u = Matrix<Real>::identity(m);
  Matrix<Real> v = Matrix<Real>::identity(m);
  detail::bidiagonal_svd(diag, super, u, v);

  // assemble (lambda, eigenvector-of-S) pairs; for singular value s with
  // columns (u_j, v_j): +s -> (v_j; u_j)/sqrt2 on (even; odd) positions.
  struct Pair {
    Real lambda;
    std::size_t column;
    int sign; // +1, -1; 0 for the structural zero of odd n
  };
  std::vector<Pair> pairs;
  const bool odd = (n % 2) != 0;
  // structural zero: the U column dominated by the padded last coordinate
  std::size_t structural = m;
  if (odd) {
    Real best = Real(-1);
    for (std::size_t j = 0; j < m; ++j) {
      const Real t = abs(u(m - 1, j));
      if (t > best) {
        best = t;
        structural = j;
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (odd && j == structural) {
      pairs.push_back({Real(0), j, 0});
      continue;
    }
    pairs.push_back({-diag[j], j, -1});
    pairs.push_back({diag[j], j, +1});
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& x, const Pair& y) { return x.lambda < y.lambda; });

  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = pairs[i].lambda;

  if (!want_vectors) return out;

  out.alpha_re = Matrix<Real>(n, n);
  out.alpha_im = Matrix<Real>(n, n);
  out.residuals.assign(n, Real(0));
  const Real inv_sqrt2 = Real(1) / sqrt(Real(2));
  std::vector<Real> y(n), xre(n), xim(n);

  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto& p = pairs[idx];
    // eigenvector of S in the permuted (even; odd) coordinates
    std::vector<Real> even(m, Real(0)), oddv(n - m, Real(0));
    if (p.sign == 0) {
      for (std::size_t r = 0; r < m; ++r) even[r] = v(r, p.column);
    } else {
      for (std::size_t r = 0; r < m; ++r) even[r] = v(r, p.column) * inv_sqrt2;
      for (std::size_t r = 0; r < n - m; ++r)
        oddv[r] = Real(p.sign) * u(r, p.column) * inv_sqrt2;
    }
    for (std::size_t r = 0; r < m; ++r) y[2 * r] = even[r];
    for (std::size_t r = 0; r < n - m; ++r) y[2 * r + 1] = oddv[r];

    // x = Q D y with D = diag(i^k); i^k cycles (1, i, -1, -i)
    std::vector<Real> dre(n), dim(n);
    for (std::size_t t = 0; t < n; ++t) {
      switch (t % 4) {
        case 0: dre[t] = y[t]; dim[t] = Real(0); break;
        case 1: dre[t] = Real(0); dim[t] = y[t]; break;
        case 2: dre[t] = -y[t]; dim[t] = Real(0); break;
        default: dre[t] = Real(0); dim[t] = -y[t]; break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      Real ar = Real(0), ai = Real(0);
      for (std::size_t t = 0; t < n; ++t) {
        ar += q(i, t) * dre[t];
        ai += q(i, t) * dim[t];
      }
      xre[i] = ar;
      xim[i] = ai;
    }
    // alpha = D L^{-T} x (undo the equilibration)
    detail::back_substitute_transposed(l, xre);
    detail::back_substitute_transposed(l, xim);
    for (std::size_t i = 0; i < n; ++i) {
      xre[i] *= equil[i];
      xim[i] *= equil[i];
    }

    // deterministic normalization: largest modulus entry becomes 1
    std::size_t arg = 0;
    Real best = Real(-1);
    for (std::size_t i = 0; i < n; ++i) {
      const Real t = xre[i] * xre[i] + xim[i] * xim[i];
      if (t > best) {
        best = t;
        arg = i;
      }
    }
    if (best > Real(0)) {
      const Real pr = xre[arg], pi = xim[arg];
      const Real norm2 = pr * pr + pi * pi;
      for (std::size_t i = 0; i < n; ++i) {
        const Real nr = (xre[i] * pr + xim[i] * pi) / norm2;
        const Real ni = (xim[i] * pr - xre[i] * pi) / norm2;
        xre[i] = nr;
        xim[i] = ni;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      out.alpha_re(i, idx) = xre[i];
      out.alpha_im(i, idx) = xim[i];
    }

    // residual ||A alpha - i lambda B alpha|| / ||B alpha|| on the original pencil
    Real num2 = Real(0), den2 = Real(0);
    for (std::size_t i = 0; i < n; ++i) {
      Real are = Real(0), aim = Real(0), bre = Real(0), bim = Real(0);
      for (std::size_t j = 0; j < n; ++j) {
        are += a0(i, j) * xre[j];
        aim += a0(i, j) * xim[j];
        bre += b0(i, j) * xre[j];
        bim += b0(i, j) * xim[j];
      }
      // i*lambda*(B alpha) = lambda*(-bim + i*bre)
      const Real rre = are + p.lambda * bim;
      const Real rim = aim - p.lambda * bre;
      num2 += rre * rre + rim * rim;
      den2 += bre * bre + bim * bim;
    }
    out.residuals[idx] = den2 > Real(0) ? Real(sqrt(num2 / den2)) : Real(0);
  }
  return out;
}

/// Solved spectrum of one degree block (or of a cumulative union).
struct SpectralBlock {
  int degree = 0;
  bool cumulative = false;
  std::vector<double> eigenvalues; // ascending
  std::vector<int> source_degree;  // per eigenvalue; used by cumulative blocks
  std::vector<std::vector<std::complex<double>>> eigenvectors; // per eigenvalue (optional)
  std::vector<double> residuals;                               // per eigenvalue (optional)
  int precision_bits = 53;
  double gram_condition = 0;
  double max_residual = 0;
  std::size_t zero_count = 0; // |lambda| < zero_threshold * omega (float classification)
  double solve_seconds = 0;
};

struct SolveOptions {
  int precision_bits = 53;
  bool want_vectors = true;
  double residual_tol = 1e-8;
  double zero_threshold = 1e-8;
  bool auto_escalate = true;
};

namespace detail {

template <class Real>
bool run_precision(const SpectralPencil& pencil, double omega_norm, const SolveOptions& opt,
                   int bits, SpectralBlock& out) {
  const std::size_t n = pencil.size();
  Matrix<Real> a(n, n), b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = to_real<Real>(pencil.coriolis(i, j));
      b(i, j) = to_real<Real>(pencil.gram(i, j));
    }
  PencilEigen<Real> eig = pencil_eigen(a, b, opt.want_vectors);
  if (!eig.cholesky_ok) return false;

  out.degree = pencil.degree;
  out.precision_bits = bits;
  out.gram_condition = eig.gram_condition.template convert_to<double>();
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.eigenvalues[i] = eig.eigenvalues[i].template convert_to<double>();
  out.source_degree.assign(n, pencil.degree);
  out.max_residual = 0;
  if (opt.want_vectors) {
    out.eigenvectors.assign(n, {});
    out.residuals.resize(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
      auto& vec = out.eigenvectors[idx];
      vec.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        vec[i] = {eig.alpha_re(i, idx).template convert_to<double>(),
                  eig.alpha_im(i, idx).template convert_to<double>()};
      out.residuals[idx] = eig.residuals[idx].template convert_to<double>();
      out.max_residual = std::max(out.max_residual, out.residuals[idx]);
    }
  }
  const double zero_tol = opt.zero_threshold * omega_norm;
  out.zero_count = 0;
  for (double ev : out.eigenvalues)
    if (std::abs(ev) < zero_tol) ++out.zero_count;
  return true;
}

template <>
inline bool run_precision<double>(const SpectralPencil& pencil, double omega_norm,
                                  const SolveOptions& opt, int bits, SpectralBlock& out) {
  const std::size_t n = pencil.size();
  Matrix<double> a(n, n), b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = to_double(pencil.coriolis(i, j));
      b(i, j) = to_double(pencil.gram(i, j));
    }
  PencilEigen<double> eig = pencil_eigen(a, b, opt.want_vectors);
  if (!eig.cholesky_ok) return false;

  out.degree = pencil.degree;
  out.precision_bits = bits;
  out.gram_condition = eig.gram_condition;
  out.eigenvalues = eig.eigenvalues;
  out.source_degree.assign(n, pencil.degree);
  out.max_residual = 0;
  if (opt.want_vectors) {
    out.eigenvectors.assign(n, {});
    out.residuals = eig.residuals;
    for (std::size_t idx = 0; idx < n; ++idx) {
      auto& vec = out.eigenvectors[idx];
      vec.resize(n);
      for (std::size_t i = 0; i < n; ++i) vec[i] = {eig.alpha_re(i, idx), eig.alpha_im(i, idx)};
      out.max_residual = std::max(out.max_residual, eig.residuals[idx]);
    }
  }
  const double zero_tol = opt.zero_threshold * omega_norm;
  out.zero_count = 0;
  for (double ev : out.eigenvalues)
    if (std::abs(ev) < zero_tol) ++out.zero_count;
  return true;
}

} // namespace detail

/// Precision-dispatching solve with the escalation policy: start at the
/// requested precision; retry at >=134 bits when the Gram condition estimate
/// exceeds 1e12 or Cholesky fails, then keep doubling up to 540 bits.
inline SpectralBlock solve_pencil(const SpectralPencil& pencil, double omega_norm,
                                  SolveOptions opt = {}) {
  static constexpr int kLadder[] = {53, 134, 270, 540};
  int start = 0;
  while (start < 3 && kLadder[start] < opt.precision_bits) ++start;

  SpectralBlock block;
  for (int rung = start; rung < 4; ++rung) {
    const int bits = kLadder[rung];
    bool ok = false;
    switch (bits) {
      case 53: ok = detail::run_precision<double>(pencil, omega_norm, opt, bits, block); break;
      case 134: ok = detail::run_precision<Float134>(pencil, omega_norm, opt, bits, block); break;
      case 270: ok = detail::run_precision<Float270>(pencil, omega_norm, opt, bits, block); break;
      default: ok = detail::run_precision<Float540>(pencil, omega_norm, opt, bits, block); break;
    }
    if (!ok) {
      if (opt.auto_escalate && rung < 3) continue;
      throw CholeskyFailure("Gram matrix numerically indefinite at " + std::to_string(bits) +
                            " bits; raise the working precision");
    }
    const bool condition_bad = bits == 53 && block.gram_condition > 1e12;
    const bool residual_bad = opt.want_vectors && block.max_residual > opt.residual_tol;
    if ((condition_bad || residual_bad) && opt.auto_escalate && rung < 3) continue;
    if (residual_bad)
      throw ResidualTooLarge("pencil residual " + std::to_string(block.max_residual) +
                             " exceeds tolerance at " + std::to_string(bits) + " bits");
    return block;
  }
  throw CholeskyFailure("unreachable");
}

/// Structural invariants of a solved block: eigenvalue count, +/- symmetry
/// within 1e-10*omega, and strict containment in (-f*omega, f*omega).
inline void check_block_invariants(const SpectralBlock& block, double omega_norm,
                                   std::size_t expected_count, int coriolis_factor = 1) {
  if (block.eigenvalues.size() != expected_count)
    throw InvariantViolation("block eigenvalue count " +
                             std::to_string(block.eigenvalues.size()) + ", expected " +
                             std::to_string(expected_count));
  const std::size_t n = block.eigenvalues.size();
  const double sym_tol = 1e-10 * omega_norm;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = block.eigenvalues[j] + block.eigenvalues[n - 1 - j];
    if (std::abs(s) > sym_tol)
      throw InvariantViolation("spectrum not symmetric about zero: pair sum " +
                               std::to_string(s));
  }
  const double bound = coriolis_factor * omega_norm;
  for (double ev : block.eigenvalues)
    if (!(std::abs(ev) < bound))
      throw InvariantViolation("eigenvalue " + std::to_string(ev) +
                               " outside the open interval (-" + std::to_string(bound) + ", " +
                               std::to_string(bound) + ")");
}

} // namespace poincare
