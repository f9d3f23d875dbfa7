#pragma once

#include <functional>
#include <vector>

namespace fracvx {

/// Mesh 0 = t_0 < t_1 < ... < t_N = T with t_j = T (j/N)^r. Grading r >= 1
/// clusters nodes near the origin, where solutions of weakly singular
/// equations lose smoothness.
struct GradedMesh {
  double T = 1.0;
  int N = 0;
  double r = 1.0;
  std::vector<double> t;

  double node(int j) const { return t[static_cast<std::size_t>(j)]; }
  double width(int k) const { return t[k] - t[k - 1]; }  // panel (t_{k-1}, t_k]
};

GradedMesh graded_mesh(double T, int N, double r);

/// Moments of a weakly singular weight over one panel [a, b] with the
/// singularity located at ti >= b:
///   m0 = integral over [a,b] of w(ti - s) ds
///   m1 = integral over [a,b] of (s - a) w(ti - s) ds
/// where w(x) = x^(-beta) or, with_log, w(x) = x^(-beta) ln x. Requires
/// beta in [0, 1). Closed forms; the log moments are the beta-derivatives of
/// the power moments.
struct PanelMoments {
  double m0 = 0.0;
  double m1 = 0.0;
};
PanelMoments panel_moments(double a, double b, double ti, double beta,
                           bool with_log);

/// Product-trapezoidal weights w_{i0..ii} on the mesh prefix [0, t_i]:
/// sum_j w_ij g(t_j) equals the integral over [0, t_i] of g(s) w(t_i - s) ds
/// exactly for piecewise-linear g, with w(x) = x^(-beta) (or x^(-beta) ln x
/// when with_log is set).
std::vector<double> product_weights(const GradedMesh& mesh, int i, double beta,
                                    bool with_log);

/// Gauss-Jacobi rule on (0, 1) for the weight (1-z)^a z^b, a > -1, b > -1:
/// sum_k w[k] f(z[k]) approximates the integral of (1-z)^a z^b f(z).
/// Nodes ascend; weights are positive and sum to B(a+1, b+1).
struct JacobiRule {
  std::vector<double> z;
  std::vector<double> w;
};
JacobiRule gauss_jacobi(int n, double a, double b);

/// Double-exponential (tanh-sinh) quadrature over (a, b). Integrable endpoint
/// singularities of algebraic/logarithmic type are handled without special
/// casing. The integrand receives (x, x - a, b - x) with the distances
/// computed in a cancellation-free form; use them for singular factors.
/// `tol` is relative to the magnitude of the result. Throws QuadratureError
/// when the level refinement does not settle within max_level.
double tanh_sinh(const std::function<double(double, double, double)>& f,
                 double a, double b, double tol, int max_level = 12);

/// Adaptive Gauss-Kronrod (7, 15) for smooth integrands on [a, b].
double integrate_smooth(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 40);

}  // namespace fracvx
