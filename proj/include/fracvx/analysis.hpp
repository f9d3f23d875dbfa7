#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fracvx/exponent.hpp"
#include "fracvx/operators.hpp"
#include "fracvx/solver.hpp"

namespace fracvx {

/// Power-law fit |v(t)| ~ C t^p obtained by least squares in log-log space.
struct FitResult {
  double exponent_p = 0.0;
  double amplitude_C = 0.0;
  double r_squared = 0.0;
  int first_index = 0;
  int last_index = 0;
};

/// Node-index window covering t in [T*1e-4, T*1e-2]: close enough to the
/// origin for the leading power to dominate, far enough that discretization
/// noise does not. May be empty on coarse or ungraded meshes.
std::pair<int, int> default_fit_window(const GradedMesh& mesh);

/// Fits values[first..last] against t[first..last]. Requires at least 4
/// points with t > 0 (InvalidParam) and values of one sign in the window
/// (DomainError).
FitResult fit_singularity_exponent(const std::vector<double>& t,
                                   const std::vector<double>& values,
                                   int first, int last);

/// Fit of |u| over the default window.
FitResult fit_singularity_exponent(const SolutionGrid& grid);

/// Observed convergence orders log2(e_k / e_{k+1}) for errors on a doubling
/// sequence of mesh sizes.
struct OrderEstimate {
  std::vector<int> Ns;
  std::vector<double> errors;
  std::vector<double> orders;
};
OrderEstimate estimate_order(const std::vector<double>& errors,
                             const std::vector<int>& Ns);

/// Forward-operator samples of u_exact at the mesh nodes, at oracle accuracy
/// (default an order tighter than the solver target).
std::vector<double> manufactured_forward(const VariableExponent& e,
                                         const ScalarFunc& u_exact,
                                         OperatorFamily family,
                                         const GradedMesh& mesh,
                                         double accuracy = 1e-10);

/// First-kind data manufactured from a known solution: the value route is
/// forward quadrature of u_exact against the Abel weight with the exponent
/// at the integration variable; the derivative route integrates the
/// differentiated representation
///
///   f'(t) = u(0) t^(-alpha(0))
///           + int_0^t [ u'(t-x) - u(t-x) alpha'(t-x) ln x ] x^(-alpha(t-x)) dx.
RhsData manufactured_rhs_data(const VariableExponent& e,
                              const ScalarFunc& u_exact,
                              double accuracy = 1e-11);

/// Linear extrapolation of u to t = 0 from the first two interior nodes.
/// The right way to read off u(0) for continuously differentiable
/// solutions; node 0 itself holds the imposed value.
double extrapolate_to_zero(const SolutionGrid& grid);

/// One named check of a predicted quantity against an observed one.
struct ExperimentCheck {
  std::string name;
  double predicted = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Composition-identity residuals on both routes for the given data.
std::vector<ExperimentCheck> verify_composition(const VariableExponent& e,
                                                const ScalarFunc& g, int N,
                                                double tolerance);

/// Interior-regime ladder: fitted solution and derivative exponents for data
/// with f(0) != 0, f(0) = 0 != f'(0), and f(0) = f'(0) = 0, plus stability
/// of the weighted solution under refinement.
std::vector<ExperimentCheck> verify_singularity(const VariableExponent& e,
                                                int N);

/// Touching-regime checks: initial-value attainment, derivative boundedness
/// under refinement, and linearity of the solve in (h, u0).
std::vector<ExperimentCheck> verify_initial_value(const VariableExponent& e,
                                                  int N, double u0);

/// Regime-appropriate bundle of the above.
std::vector<ExperimentCheck> run_verification(const VariableExponent& e,
                                              int N);

/// CSV: header `name,predicted,observed,tolerance,pass`.
void write_checks_csv(const std::vector<ExperimentCheck>& checks,
                      std::ostream& out);
/// One line per check: name, predicted vs observed, PASS/FAIL.
void write_checks_summary(const std::vector<ExperimentCheck>& checks,
                          std::ostream& out);

}  // namespace fracvx
