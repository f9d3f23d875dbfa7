#include "fracvx/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "fracvx/errors.hpp"
#include "fracvx/specialfn.hpp"

namespace fracvx {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace

GradedMesh graded_mesh(double T, int N, double r) {
  if (!(T > 0.0)) throw InvalidParam("graded_mesh: T must be positive");
  if (N < 1 || N > 1000000) throw InvalidParam("graded_mesh: bad N");
  if (!(r >= 1.0) || !(r <= 10.0)) {
    throw InvalidParam("graded_mesh: grading must satisfy 1 <= r <= 10");
  }
  if (std::pow(1.0 / N, r) < 1e-14) {
    throw InvalidParam(
        "graded_mesh: first panel below resolution (reduce N or r)");
  }
  GradedMesh m;
  m.T = T;
  m.N = N;
  m.r = r;
  m.t.resize(static_cast<std::size_t>(N) + 1);
  for (int j = 0; j <= N; ++j) {
    m.t[j] = (j == N) ? T : T * std::pow(static_cast<double>(j) / N, r);
  }
  return m;
}

PanelMoments panel_moments(double a, double b, double ti, double beta,
                           bool with_log) {
  if (!(beta >= 0.0) || !(beta < 1.0)) {
    throw InvalidParam("panel_moments: beta must lie in [0, 1)");
  }
  if (!(a < b) || !(b <= ti)) {
    throw InvalidParam("panel_moments: need a < b <= ti");
  }
  // Work in x = ti - s, which runs over [xa, xb] = [ti - b, ti - a].
  const double xa = ti - b;
  const double xb = ti - a;
  const double p = 1.0 - beta;
  const double q = 2.0 - beta;

  // Antiderivatives of x^(-beta) and x^(1-beta), plain and with ln x.
  auto P1 = [&](double x) { return x <= 0.0 ? 0.0 : std::pow(x, p) / p; };
  auto P2 = [&](double x) { return x <= 0.0 ? 0.0 : std::pow(x, q) / q; };
  auto Q1 = [&](double x) {
    if (x <= 0.0) return 0.0;
    return std::pow(x, p) * (p * std::log(x) - 1.0) / (p * p);
  };
  auto Q2 = [&](double x) {
    if (x <= 0.0) return 0.0;
    return std::pow(x, q) * (q * std::log(x) - 1.0) / (q * q);
  };

  PanelMoments m;
  if (!with_log) {
    const double i0 = P1(xb) - P1(xa);
    const double i1 = P2(xb) - P2(xa);  // integral of x * x^(-beta)
    m.m0 = i0;
    m.m1 = xb * i0 - i1;  // s - a = xb - x
  } else {
    const double j0 = Q1(xb) - Q1(xa);
    const double j1 = Q2(xb) - Q2(xa);
    m.m0 = j0;
    m.m1 = xb * j0 - j1;
  }
  return m;
}

std::vector<double> product_weights(const GradedMesh& mesh, int i, double beta,
                                    bool with_log) {
  if (i < 1 || i > mesh.N) {
    throw InvalidParam("product_weights: node index out of range");
  }
  std::vector<double> w(static_cast<std::size_t>(i) + 1, 0.0);
  const double ti = mesh.node(i);
  for (int k = 1; k <= i; ++k) {
    const double a = mesh.node(k - 1);
    const double b = mesh.node(k);
    const PanelMoments pm = panel_moments(a, b, ti, beta, with_log);
    const double slope = pm.m1 / (b - a);
    w[k - 1] += pm.m0 - slope;
    w[k] += slope;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Gauss-Jacobi via Golub-Welsch on the symmetric tridiagonal Jacobi matrix.
// ---------------------------------------------------------------------------

namespace {

// Eigenvalues of a symmetric tridiagonal matrix (diagonal d, subdiagonal e)
// together with the first component of each normalized eigenvector, by the
// implicit QL method. On return d holds ascending eigenvalues and z the
// first components.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e,
                std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  e.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) {
          break;
        }
      }
      if (m == l) break;
      if (++iter > 50) {
        throw QuadratureError("gauss_jacobi: eigen iteration did not converge");
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        // Accumulate only the first row of the eigenvector matrix.
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  // Sort ascending, carrying the first components along.
  for (int i = 0; i < n - 1; ++i) {
    int k = i;
    for (int j = i + 1; j < n; ++j) {
      if (d[j] < d[k]) k = j;
    }
    if (k != i) {
      std::swap(d[i], d[k]);
      std::swap(z[i], z[k]);
    }
  }
}

}  // namespace

JacobiRule gauss_jacobi(int n, double a, double b) {
  if (n < 1 || n > 4096) throw InvalidParam("gauss_jacobi: bad node count");
  if (!(a > -1.0) || !(b > -1.0)) {
    throw InvalidParam("gauss_jacobi: weight exponents must exceed -1");
  }

  // Three-term recurrence coefficients of Jacobi polynomials for the weight
  // (1-x)^a (1+x)^b on [-1, 1].
  std::vector<double> d(n), e(n > 1 ? n - 1 : 0), z(n, 0.0);
  z[0] = 1.0;
  const double ab = a + b;
  d[0] = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double k2 = 2.0 * k + ab;
    d[k] = (b * b - a * a) / (k2 * (k2 + 2.0));
  }
  if (n > 1) {
    e[0] = std::sqrt(4.0 * (a + 1.0) * (b + 1.0) /
                     ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    for (int k = 2; k < n; ++k) {
      const double k2 = 2.0 * k + ab;
      e[k - 1] = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + ab) /
                           (k2 * k2 * (k2 + 1.0) * (k2 - 1.0)));
    }
  }

  tridiag_ql(d, e, z);

  // Map [-1, 1] to (0, 1); the total mass on (0, 1) is B(a+1, b+1). Note the
  // [-1, 1] weight pairs (1-x)^a with the right endpoint, i.e. z -> (1+x)/2
  // sends the (1+x)^b factor to z^b and (1-x)^a to (1-z)^a.
  const double mass = beta_fn(a + 1.0, b + 1.0);
  JacobiRule rule;
  rule.z.resize(n);
  rule.w.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.z[k] = 0.5 * (d[k] + 1.0);
    rule.w[k] = mass * z[k] * z[k];
  }
  return rule;
}

// ---------------------------------------------------------------------------
// tanh-sinh
// ---------------------------------------------------------------------------

double tanh_sinh(const std::function<double(double, double, double)>& f,
                 double a, double b, double tol, int max_level) {
  if (!(b > a)) throw InvalidParam("tanh_sinh: need a < b");
  const double c = 0.5 * (b - a);
  constexpr double kHalfPi = 1.5707963267948966;

  // Contribution of the abscissa at trapezoid coordinate u.
  auto term = [&](double u) -> double {
    const double v = kHalfPi * std::sinh(u);
    // 1 - tanh(v) = 2 / (e^{2v} + 1), computed without cancellation.
    const double ep = std::exp(2.0 * v);
    const double from_b = c * 2.0 / (ep + 1.0);
    const double from_a = c * 2.0 * ep / (ep + 1.0);
    if (from_b <= 0.0 || from_a <= 0.0 || !std::isfinite(from_a)) {
      return 0.0;  // beyond double resolution; weight is negligible there
    }
    const double x = (from_b < from_a) ? b - from_b : a + from_a;
    const double w = kHalfPi * std::cosh(u) * 2.0 * (from_a / (ep + 1.0));
    // w = c * (pi/2) cosh(u) / cosh^2(v), written through from_a to avoid
    // overflow of cosh^2.
    const double val = f(x, from_a, from_b);
    return std::isfinite(val) ? w * val : 0.0;
  };

  // Level 0: h = 1.
  double h = 1.0;
  double sum = term(0.0);
  const double cutoff = std::numeric_limits<double>::min() * 1e4;
  for (int side = -1; side <= 1; side += 2) {
    int idle = 0;
    for (int j = 1; j < 7; ++j) {
      const double contrib = term(side * j * h);
      sum += contrib;
      if (std::fabs(contrib) <= cutoff) {
        if (++idle >= 2) break;
      } else {
        idle = 0;
      }
    }
  }
  double estimate = h * sum;

  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    // Add the odd multiples of the new h.
    double add = 0.0;
    for (int side = -1; side <= 1; side += 2) {
      int idle = 0;
      for (int j = 1; j < (1 << 24); j += 2) {
        const double contrib = term(side * j * h);
        add += contrib;
        const double scale = std::fabs(sum) + std::fabs(add) + 1e-300;
        if (std::fabs(contrib) <= 1e-18 * scale) {
          if (++idle >= 2) break;
        } else {
          idle = 0;
        }
      }
    }
    sum += add;
    const double refined = h * sum;
    const double diff = std::fabs(refined - estimate);
    estimate = refined;
    if (level >= 3 &&
        diff <= tol * std::max(std::fabs(refined), 1e-300)) {
      return refined;
    }
  }
  char msg[96];
  std::snprintf(msg, sizeof(msg),
                "tanh_sinh: refinement did not reach tolerance %g", tol);
  throw QuadratureError(msg);
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod (7, 15)
// ---------------------------------------------------------------------------

namespace {

// Standard (G7, K15) abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct GkResult {
  double value;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double value = resk * h;
  const double err = std::fabs((resk - resg) * h);
  return {value, err};
}

double gk_adapt(const std::function<double(double)>& f, double a, double b,
                double tol, int depth, int max_depth) {
  const GkResult r = gk15(f, a, b);
  if (r.error <= tol || depth >= max_depth) {
    if (depth >= max_depth && r.error > 1e3 * tol) {
      throw QuadratureError("integrate_smooth: adaptive depth exhausted");
    }
    return r.value;
  }
  const double m = 0.5 * (a + b);
  return gk_adapt(f, a, m, 0.5 * tol, depth + 1, max_depth) +
         gk_adapt(f, m, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate_smooth(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  if (!(b > a)) throw InvalidParam("integrate_smooth: need a <= b");
  const GkResult probe = gk15(f, a, b);
  const double scale = std::max(std::fabs(probe.value), 1.0);
  return gk_adapt(f, a, b, tol * scale, 0, max_depth);
}

}  // namespace fracvx
