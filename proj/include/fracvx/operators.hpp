#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracvx/exponent.hpp"
#include "fracvx/quadrature.hpp"

namespace fracvx {

// The seven supported operator families. "Left" means the exponent (and any
// Gamma normalization) is evaluated at the integration variable s, "Right"
// means at the evaluation time t:
//
//   AbelLeft       int_0^t g(s) (t-s)^{-alpha(s)} ds
//   AbelRight      int_0^t g(s) (t-s)^{-alpha(t)} ds
//   RLLeft         int_0^t g(s) (t-s)^{alpha(s)-1} / Gamma(alpha(s)) ds
//   RLRight        int_0^t g(s) (t-s)^{alpha(t)-1} / Gamma(alpha(t)) ds
//   RLGeneral      int_0^t g(s) (t-s)^{a2(t,s)-1} / Gamma(a2(t,s)) ds
//   TemperedLeft   RLLeft with an extra factor exp(-sigma (t-s))
//   TemperedRight  RLRight with an extra factor exp(-sigma (t-s))
enum class OperatorFamily {
  AbelLeft,
  AbelRight,
  RLLeft,
  RLRight,
  RLGeneral,
  TemperedLeft,
  TemperedRight,
};

// C^1 exponent of two variables for RLGeneral. value(t, s) receives the
// evaluation time in the first slot and the integration point in the second;
// d1 and d2 are the partial derivatives with respect to the first and second
// slot. Values must lie in (0, 1) on the triangle 0 <= s <= t <= T.
struct TwoVarExponent {
  std::function<double(double, double)> value;
  std::function<double(double, double)> d1;
  std::function<double(double, double)> d2;
};

class OperatorSpec {
 public:
  static OperatorSpec abel_left(VariableExponent e);
  static OperatorSpec abel_right(VariableExponent e);
  static OperatorSpec rl_left(VariableExponent e);
  static OperatorSpec rl_right(VariableExponent e);
  static OperatorSpec rl_general(TwoVarExponent e, double horizon);
  static OperatorSpec tempered_left(VariableExponent e, double sigma);
  static OperatorSpec tempered_right(VariableExponent e, double sigma);

  OperatorFamily family() const { return family_; }
  double sigma() const { return sigma_; }
  double horizon() const { return horizon_; }

  bool has_scalar_exponent() const { return exponent_.has_value(); }
  const VariableExponent& exponent() const;
  const TwoVarExponent& exponent2() const;

 private:
  OperatorSpec(OperatorFamily family, std::optional<VariableExponent> e,
               std::optional<TwoVarExponent> e2, double sigma, double horizon)
      : family_(family),
        exponent_(std::move(e)),
        exponent2_(std::move(e2)),
        sigma_(sigma),
        horizon_(horizon) {}

  OperatorFamily family_;
  std::optional<VariableExponent> exponent_;
  std::optional<TwoVarExponent> exponent2_;
  double sigma_ = 0.0;
  double horizon_ = 0.0;
};

// Operator value at time t by adaptive singular quadrature on (0, t). The
// tolerance is relative to the magnitude of the result. t = 0 returns 0.
double eval_forward(const OperatorSpec& spec,
                    const std::function<double(double)>& g, double t,
                    double accuracy = 1e-11);

// Grid transcription: applies the operator to piecewise-linear data on the
// mesh using product weights. Right families use the exact row exponent; for
// families whose exponent moves with the integration variable the exponent is
// frozen at each panel midpoint. Returns values at all mesh nodes.
std::vector<double> eval_forward_grid(const OperatorSpec& spec,
                                      const std::vector<double>& g_values,
                                      const GradedMesh& mesh);

}  // namespace fracvx
