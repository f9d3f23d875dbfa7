#include "fracvx/exponent.hpp"

#include <cmath>
#include <string>

#include "fracvx/errors.hpp"

namespace fracvx {

namespace {
constexpr double kOneTolerance = 1e-12;
}

VariableExponent VariableExponent::make(ScalarFunc alpha, double T,
                                        int validation_intervals) {
  if (!(T > 0.0)) throw InvalidParam("exponent horizon T must be positive");
  if (validation_intervals < 8) {
    throw InvalidParam("validation grid too coarse");
  }

  const int n = validation_intervals;
  double lo = 1.0, hi = 0.0;
  double a0 = 0.0;
  for (int k = 0; k <= n; ++k) {
    // Hit both endpoints exactly.
    const double t = (k == n) ? T : T * (static_cast<double>(k) / n);
    Jet2 j;
    try {
      j = alpha.jet(t);
    } catch (const DomainError& err) {
      throw NotSmooth("exponent jet evaluation failed at t = " +
                      std::to_string(t) + ": " + err.what());
    }
    if (!std::isfinite(j.v) || !std::isfinite(j.d1) || !std::isfinite(j.d2)) {
      throw NotSmooth("exponent has non-finite value or derivatives at t = " +
                      std::to_string(t));
    }
    if (k == 0) a0 = j.v;
    const bool at_origin_touch = (k == 0 && std::fabs(j.v - 1.0) <= kOneTolerance);
    if (!at_origin_touch && !(j.v > 0.0 && j.v < 1.0)) {
      throw RangeViolation("exponent leaves (0, 1) at t = " +
                           std::to_string(t) + " (alpha = " +
                           std::to_string(j.v) + ")");
    }
    lo = std::min(lo, j.v);
    hi = std::max(hi, j.v);
  }

  const ExponentRegime regime = (std::fabs(a0 - 1.0) <= kOneTolerance)
                                    ? ExponentRegime::TouchesOneAtZero
                                    : ExponentRegime::InteriorRange;
  return VariableExponent(std::move(alpha), T, regime, lo, hi, a0);
}

double VariableExponent::power_term(double s, double t) const {
  if (!(s >= 0.0) || !(s <= t) || !(t <= T_)) {
    throw InvalidParam("power_term requires 0 <= s <= t <= T");
  }
  if (s == t) return 1.0;
  return std::exp((alpha_(t) - alpha_(s)) * std::log(t - s));
}

VariableExponent VariableExponent::complement() const {
  return make(ScalarFunc::parse("1 - (" + alpha_.source() + ")"), T_);
}

VariableExponent make_exponent(ScalarFunc alpha, double T,
                               int validation_intervals) {
  return VariableExponent::make(std::move(alpha), T, validation_intervals);
}

}  // namespace fracvx
