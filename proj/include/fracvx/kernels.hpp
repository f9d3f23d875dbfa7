#pragma once

#include "fracvx/exponent.hpp"
#include "fracvx/operators.hpp"

namespace fracvx {

enum class KernelMethod { Analytic, ZQuadrature, FiniteDifference };

// A kernel sample. When the logarithmic singularity is analytically
// separable, value = smooth_part + log_singular_part * ln(t - s) and the
// coefficient is reported so that product quadrature can integrate the log
// factor in closed form; otherwise log_singular_part is 0.
struct KernelEval {
  double value = 0.0;
  double log_singular_part = 0.0;
  KernelMethod method = KernelMethod::Analytic;
};

// Identity weight gamma(t) = Gamma(alpha(t)) * Gamma(1 - alpha(t)), i.e.
// pi / sin(pi alpha(t)). Diverges as alpha approaches 1, so an exponent that
// touches 1 at t = 0 is rejected there.
double gamma_weight(const VariableExponent& e, double t);

// Kernel of the composition "Abel operator with exponent at s, then the
// hat-inversion": the t-derivative of B(alpha(t), 1-alpha(s)) (t-s)^(alpha(t)
// - alpha(s)). Log-singular on the diagonal; requires s < t.
KernelEval kernel_K(const VariableExponent& e, double s, double t);

// Diagonal limits of the separable pieces of kernel_K: value carries the
// smooth part, log_singular_part the ln coefficient.
KernelEval kernel_K_diagonal(const VariableExponent& e, double t);

// Kernel of the mirrored composition, as a z-integral over (0, 1). Bounded
// (no log part). The integrand carries variable-strength algebraic endpoint
// singularities times a log factor, so it is integrated by the
// double-exponential rule, refined level by level until two successive
// levels agree; n_z caps the refinement depth (clamped to [4, 12]).
KernelEval kernel_L(const VariableExponent& e, double s, double t,
                    int n_z = 12);

// Closed-form diagonal limit of kernel_L.
KernelEval kernel_L_diagonal(const VariableExponent& e, double t);

// Kernel of the fractional-derivative composition: the t-derivative of
// (t-y)^(alpha(t)-alpha(y)) / Gamma(1 + alpha(t) - alpha(y)). Log-singular.
KernelEval kernel_RL(const VariableExponent& e, double y, double t);
KernelEval kernel_RL_diagonal(const VariableExponent& e, double t);

// Kernel of the two-variable composition: differentiates the z-integral
// representation in t under the integral sign. Quadrature policy as in
// kernel_L.
KernelEval kernel_M_dt(const TwoVarExponent& a2, double y, double t,
                       int n_z = 12);

// Finite-difference cross-check routes: Richardson-extrapolated central
// differences of the undifferentiated quantities. Slower and step-limited;
// kept as an independent route for validation.
KernelEval kernel_K_fd(const VariableExponent& e, double s, double t);
KernelEval kernel_RL_fd(const VariableExponent& e, double y, double t);

}  // namespace fracvx
