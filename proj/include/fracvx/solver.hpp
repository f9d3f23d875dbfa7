#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fracvx/exponent.hpp"
#include "fracvx/inversion.hpp"
#include "fracvx/quadrature.hpp"

namespace fracvx {

/// Identity-term weight of the second-kind equation: the reflection product
/// Gamma(alpha) Gamma(1-alpha) for the Abel pipelines, or exactly 1 for the
/// fractional-derivative pipeline whose composition is already normalized.
enum class GammaMode { GammaWeight, Unit };

/// One kernel sample split as  k(s, t) = smooth + log_coef * ln(t - s).
struct KernelParts {
  double smooth = 0.0;
  double log_coef = 0.0;
};

/// Kernel plumbed into the second-kind solver: off-diagonal samples on the
/// open triangle plus the diagonal limit of the separable parts.
struct Vie2Kernel {
  std::function<KernelParts(double s, double t)> off_diagonal;
  std::function<KernelParts(double t)> diagonal;
};

Vie2Kernel vie2_kernel_zero();
Vie2Kernel vie2_kernel_K(const VariableExponent& e);
Vie2Kernel vie2_kernel_RL(const VariableExponent& e);

struct Vie2Options {
  GammaMode gamma_mode = GammaMode::GammaWeight;
  /// Value of the unknown at the t = 0 node. When absent (solution singular
  /// at the origin) the node-0 kernel contribution is dropped; the graded
  /// first panel keeps the induced error within the scheme order.
  std::optional<double> value_at_zero = 0.0;
};

/// Solves  gamma(t_i) v_i + sum_{j<=i} c_ij v_j = rhs_i  for i = 1..N by
/// forward substitution, where c_ij are product-quadrature coefficients that
/// integrate the kernel's plain and logarithmic parts exactly against a
/// piecewise-linear v. rhs[0] is ignored; v[0] is the supplied value (or NaN
/// when absent). Throws QuadratureError when a diagonal is near-singular
/// (|1 + c_ii / gamma_i| < 1e-8).
std::vector<double> solve_vie2(const VariableExponent& e,
                               const std::vector<double>& rhs,
                               const GradedMesh& mesh,
                               const Vie2Kernel& kernel,
                               const Vie2Options& opts = {});

/// Discrete solution with the diagnostics the theory talks about.
struct SolutionGrid {
  GradedMesh mesh;
  std::vector<double> u;
  /// t^(1 - alpha(0)) u(t): the quantity that stays bounded when u itself
  /// blows up at the origin.
  std::vector<double> weighted_u;
  /// Second-order finite-difference derivative estimates; NaN at node 0 and
  /// one-sided where a centered stencil would cross the origin.
  std::vector<double> du_estimate;
  /// Log-log slope of |u| over the default near-zero window; NaN when the
  /// window is degenerate or u changes sign there.
  double fitted_exponent = std::numeric_limits<double>::quiet_NaN();
  double alpha_at_zero = std::numeric_limits<double>::quiet_NaN();
};

/// First-kind problem  int_0^t u(s) (t-s)^(-alpha(s)) ds = f(t).
struct AbelProblem {
  VariableExponent exponent;
  RhsData f;
};
AbelProblem abel_problem(VariableExponent e, const ScalarFunc& f);
AbelProblem abel_problem(VariableExponent e, RhsData f);

/// Fractional Cauchy problem  D^alpha(t) u = h,  u(0) = u0, where D is the
/// derivative of the complementary-order fractional integral (exponent and
/// normalization at the integration variable).
struct FdeProblem {
  VariableExponent exponent;
  std::function<double(double)> h;
  double u0 = 0.0;
};
FdeProblem fde_problem(VariableExponent e, const ScalarFunc& h, double u0);
FdeProblem fde_problem(VariableExponent e, std::function<double(double)> h,
                       double u0);

/// Mesh grading suited to the regime: strong grading for interior exponents
/// (solutions behave like t^(alpha(0)-1) or t^alpha(0) near 0), mild or none
/// when the exponent touches 1 at the origin and the solution is smooth.
double default_grading(const VariableExponent& e);

/// Abel pipeline: transform the data, solve the second-kind equation with
/// the log-singular kernel and the reflection weight. When f(0) != 0 the
/// solution is unbounded at the origin: u[0] is set to +/-inf and
/// weighted_u[0] carries the finite limit f(0)/gamma(0).
SolutionGrid solve_abel(const AbelProblem& p, const GradedMesh& mesh,
                        double rhs_accuracy = 1e-10);

/// Cauchy-problem pipeline. Interior regime: only u0 = 0 is well posed
/// (IllPosedError otherwise); the problem reduces to an Abel solve for
/// u / Gamma(1 - alpha). Touching regime: second-kind equation with the
/// fractional-composition kernel, unit identity weight, and u(0) = u0.
SolutionGrid solve_fde(const FdeProblem& p, const GradedMesh& mesh,
                       double rhs_accuracy = 1e-10);

/// CSV serialization: header `t,u,weighted_u,du_estimate`, one row per node,
/// 17 significant digits, LF line endings.
void write_csv(const SolutionGrid& grid, std::ostream& out);
void write_csv(const SolutionGrid& grid, const std::string& path);

}  // namespace fracvx
