#pragma once

#include "fracvx/expr.hpp"

namespace fracvx {

enum class ExponentRegime {
  /// 0 < alpha(t) < 1 on all of [0, T].
  InteriorRange,
  /// alpha(0) = 1 and 0 < alpha(t) < 1 on (0, T].
  TouchesOneAtZero,
};

/// A validated variable exponent alpha(t) on [0, T].
///
/// Validation samples jets on an equispaced grid including both endpoints.
/// It classifies the regime, rejects exponents that leave (0, 1) on the grid
/// (RangeViolation), and rejects exponents whose jets fail or are non-finite
/// anywhere on the grid (NotSmooth). The grid check is dense, not a global
/// optimization; pathological behavior between grid nodes is out of scope.
class VariableExponent {
 public:
  static VariableExponent make(ScalarFunc alpha, double T,
                               int validation_intervals = 10000);

  double operator()(double t) const { return alpha_(t); }
  Jet2 jet(double t) const { return alpha_.jet(t); }

  double horizon() const { return T_; }
  ExponentRegime regime() const { return regime_; }
  double lower_bound() const { return lo_; }
  double upper_bound() const { return hi_; }
  double at_zero() const { return a0_; }
  const ScalarFunc& alpha() const { return alpha_; }

  /// (t - s)^(alpha(t) - alpha(s)) evaluated as exp((alpha(t) - alpha(s)) *
  /// ln(t - s)); equals 1 at s == t by convention. Requires 0 <= s <= t <= T.
  double power_term(double s, double t) const;

  /// The exponent 1 - alpha(t) over the same horizon. Only meaningful in the
  /// InteriorRange regime (where the complement is again interior).
  VariableExponent complement() const;

 private:
  VariableExponent(ScalarFunc alpha, double T, ExponentRegime regime,
                   double lo, double hi, double a0)
      : alpha_(std::move(alpha)), T_(T), regime_(regime), lo_(lo), hi_(hi),
        a0_(a0) {}

  ScalarFunc alpha_;
  double T_;
  ExponentRegime regime_;
  double lo_, hi_, a0_;
};

/// Free-function spelling of VariableExponent::make.
VariableExponent make_exponent(ScalarFunc alpha, double T,
                               int validation_intervals = 10000);

}  // namespace fracvx
