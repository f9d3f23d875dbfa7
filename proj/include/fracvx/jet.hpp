#pragma once

#include <cmath>

#include "fracvx/errors.hpp"

namespace fracvx {

/// Second-order forward-mode jet: value together with first and second
/// derivatives with respect to a single scalar variable.
struct Jet2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static constexpr Jet2 constant(double c) { return {c, 0.0, 0.0}; }
  static constexpr Jet2 variable(double t) { return {t, 1.0, 0.0}; }

  bool is_constant() const { return d1 == 0.0 && d2 == 0.0; }
};

constexpr Jet2 operator+(Jet2 a, Jet2 b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

constexpr Jet2 operator-(Jet2 a, Jet2 b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

constexpr Jet2 operator-(Jet2 a) { return {-a.v, -a.d1, -a.d2}; }

constexpr Jet2 operator*(Jet2 a, Jet2 b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

constexpr Jet2 operator/(Jet2 a, Jet2 b) {
  const double q = a.v / b.v;
  const double q1 = (a.d1 - q * b.d1) / b.v;
  const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
  return {q, q1, q2};
}

/// Composition rule for a univariate function f applied to a jet u:
/// given f(u.v), f'(u.v), f''(u.v).
constexpr Jet2 compose(Jet2 u, double f, double df, double ddf) {
  return {f, df * u.d1, ddf * u.d1 * u.d1 + df * u.d2};
}

inline Jet2 sin(Jet2 u) {
  const double s = std::sin(u.v), c = std::cos(u.v);
  return compose(u, s, c, -s);
}

inline Jet2 cos(Jet2 u) {
  const double s = std::sin(u.v), c = std::cos(u.v);
  return compose(u, c, -s, -c);
}

inline Jet2 exp(Jet2 u) {
  const double e = std::exp(u.v);
  return compose(u, e, e, e);
}

inline Jet2 log(Jet2 u) {
  if (!(u.v > 0.0)) throw DomainError("ln: argument must be positive");
  const double inv = 1.0 / u.v;
  return compose(u, std::log(u.v), inv, -inv * inv);
}

inline Jet2 sqrt(Jet2 u) {
  if (u.v < 0.0) throw DomainError("sqrt: argument must be nonnegative");
  const double r = std::sqrt(u.v);
  // At u.v == 0 the derivative components follow IEEE semantics (inf/nan).
  return compose(u, r, 0.5 / r, -0.25 / (r * u.v));
}

/// Integer power by repeated squaring; valid for any base sign.
inline Jet2 ipow(Jet2 a, long n) {
  if (n < 0) return Jet2::constant(1.0) / ipow(a, -n);
  Jet2 result = Jet2::constant(1.0);
  while (n > 0) {
    if (n & 1) result = result * a;
    a = a * a;
    n >>= 1;
  }
  return result;
}

/// General power a^b = exp(b ln a); requires a positive base unless the
/// exponent is a constant integer (handled by the caller through ipow).
inline Jet2 pow(Jet2 a, Jet2 b) {
  if (b.is_constant()) {
    const double bv = b.v;
    if (bv == std::floor(bv) && std::fabs(bv) <= 1024.0) {
      return ipow(a, static_cast<long>(bv));
    }
  }
  if (!(a.v > 0.0)) {
    throw DomainError("pow: base must be positive for non-integer exponent");
  }
  return exp(b * log(a));
}

}  // namespace fracvx
