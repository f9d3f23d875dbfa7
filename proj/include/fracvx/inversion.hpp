#pragma once

#include <functional>
#include <vector>

#include "fracvx/exponent.hpp"
#include "fracvx/quadrature.hpp"

namespace fracvx {

/// First-kind data f presented as a value/derivative pair plus f(0). The
/// split form exists so manufactured data, whose values come from quadrature
/// rather than from an expression, can flow through the same transforms.
struct RhsData {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  double at_zero = 0.0;
};

/// Wraps an expression: deriv is the jet derivative, at_zero is f(0).
RhsData make_rhs_data(const ScalarFunc& f);

/// Inversion transform of Abel-type data,
///
///   f(0) t^(a-1) + int_0^t [ f'(t-s) + a'(t) ln(s) f(t-s) ] s^(a-1) ds,
///
/// with a = alpha(t), evaluated by singular-endpoint quadrature (both s = 0
/// and s = t may carry integrable singularities). Requires the interior
/// exponent regime. At t = 0 the value is 0 when f(0) = 0 and unbounded
/// otherwise (DomainError).
double rhs_abel(const VariableExponent& e, const RhsData& f, double t,
                double accuracy = 1e-11);
double rhs_abel(const VariableExponent& e, const ScalarFunc& f, double t,
                double accuracy = 1e-11);

/// Inversion transform of the cumulative data of a fractional Cauchy
/// problem, i.e. the complementary-order derivative applied to
/// (int_0^t h + c0). Written in closed form (inner cumulative integral
/// eliminated by switching the integration order):
///
///   int_0^t h(y) [ X^(a-1)/Gamma(a)
///                  + a'(t) X^a (ln X - psi(1+a)) / Gamma(1+a) ] dy
///   + c0 [ t^(a-1)/Gamma(a) + a'(t) t^a (ln t - psi(1+a)) / Gamma(1+a) ],
///
/// with X = t - y and a = alpha(t). When the exponent touches 1 at t = 0 the
/// transform extends continuously to t = 0 with value c0.
double rhs_fde(const VariableExponent& e,
               const std::function<double(double)>& h, double c0, double t,
               double accuracy = 1e-11);

/// The same transform for the interior regime written against the plain
/// Abel weight (no Gamma normalization), used by the reduction of the
/// interior-regime Cauchy problem to an Abel solve:
///
///   int_0^t h(y) [ X^(a-1) + a'(t) X^a (a ln X - 1) / a^2 ] dy.
double rhs_fde_interior(const VariableExponent& e,
                        const std::function<double(double)>& h, double t,
                        double accuracy = 1e-11);

/// Which composition to test: forward operator with exponent at the
/// integration variable followed by the hat-inversion, or the mirrored pair.
enum class ComposeRoute { AbelLeftThenDhat, AbelRightThenD };

struct ComposeOptions {
  double fd_step_scale = 1e-4;   // outer FD step as a fraction of T
  double quad_accuracy = 1e-11;  // forward-evaluation tolerance
  int n_z = 12;                  // z-rule refinement depth, bounded route
};

struct ComposeReport {
  std::vector<double> nodes;  // interior mesh nodes used
  std::vector<double> lhs;    // finite difference of the composition
  std::vector<double> rhs;    // gamma g + product quadrature of the kernel
  double max_residual = 0.0;
};

/// Verifies the approximate-inversion identity at the interior mesh nodes:
/// the left side differentiates the double forward composition numerically,
/// the right side is gamma(t) g(t) plus the product-quadrature integral of
/// the predicted second-kind kernel. The two routes share no code.
ComposeReport compose_residual(const VariableExponent& e, const ScalarFunc& g,
                               const GradedMesh& mesh, ComposeRoute which,
                               const ComposeOptions& opts = {});

}  // namespace fracvx
