#include "fracvx/kernels.hpp"

#include <cmath>

#include "fracvx/errors.hpp"
#include "fracvx/quadrature.hpp"
#include "fracvx/specialfn.hpp"

namespace fracvx {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kMinSeparation = 1e-14;
constexpr double kQuotientGuard = 1e-6;

void check_pair(const VariableExponent& e, double s, double t,
                const char* who) {
  if (!std::isfinite(s) || !std::isfinite(t) || s < 0.0 ||
      t > e.horizon() * (1.0 + 1e-12)) {
    throw InvalidParam(std::string(who) + ": (s, t) outside the domain");
  }
  if (!(t - s >= kMinSeparation)) {
    throw InvalidParam(std::string(who) +
                       ": points too close to the diagonal; use the diagonal "
                       "limit instead");
  }
}

void require_interior(const VariableExponent& e, const char* who) {
  if (e.regime() != ExponentRegime::InteriorRange) {
    throw InvalidParam(std::string(who) +
                       ": exponent must stay strictly inside (0, 1)");
  }
}

// alpha(t) - alpha(s), switching to the midpoint slope when the separation
// is small enough for the direct difference to lose digits.
double exponent_gap(const VariableExponent& e, double s, double t) {
  const double d = t - s;
  if (d < kQuotientGuard) return e.jet(0.5 * (s + t)).d1 * d;
  return e(t) - e(s);
}

}  // namespace

double gamma_weight(const VariableExponent& e, double t) {
  if (!std::isfinite(t) || t < 0.0 || t > e.horizon() * (1.0 + 1e-12)) {
    throw InvalidParam("gamma_weight: t outside [0, T]");
  }
  const double a = e(t);
  if (a >= 1.0 - 1e-12) {
    throw DomainError("gamma_weight: diverges as the exponent reaches 1");
  }
  // sin(pi a) via the distance to the nearer integer, exact under reflection.
  const double m = std::min(a, 1.0 - a);
  return kPi / std::sin(kPi * m);
}

KernelEval kernel_K(const VariableExponent& e, double s, double t) {
  check_pair(e, s, t, "kernel_K");
  require_interior(e, "kernel_K");
  const double d = t - s;
  const Jet2 at = e.jet(t);
  const double as = e(s);
  const double gap = exponent_gap(e, s, t);
  const double ld = std::log(d);
  const double P = std::exp(gap * ld);
  const double B = beta_fn(at.v, 1.0 - as);
  const double dB = at.d1 * B * (digamma(at.v) - digamma(1.0 + gap));

  KernelEval k;
  k.method = KernelMethod::Analytic;
  k.log_singular_part = B * P * at.d1;
  const double smooth = dB * P + B * P * (gap / d);
  k.value = smooth + k.log_singular_part * ld;
  return k;
}

KernelEval kernel_K_diagonal(const VariableExponent& e, double t) {
  require_interior(e, "kernel_K");
  const Jet2 a = e.jet(t);
  const double g = gamma_weight(e, t);
  KernelEval k;
  k.method = KernelMethod::Analytic;
  k.log_singular_part = g * a.d1;
  k.value = g * a.d1 * (digamma(a.v) - digamma(1.0) + 1.0);
  return k;
}

namespace {

int z_rule_depth(int n_z, const char* who) {
  if (n_z < 4) throw InvalidParam(std::string(who) + ": n_z must be at least 4");
  return std::min(n_z, 12);
}

}  // namespace

KernelEval kernel_L(const VariableExponent& e, double s, double t, int n_z) {
  check_pair(e, s, t, "kernel_L");
  require_interior(e, "kernel_L");
  const int depth = z_rule_depth(n_z, "kernel_L");
  const double d = t - s;
  auto f = [&](double /*z*/, double from0, double from1) {
    const double lz = std::log(from0);
    const double l1mz = std::log(from1);
    const Jet2 au = e.jet(d * from0 + s);
    return au.d1 * from0 * (l1mz - lz) *
           std::exp((au.v - 1.0) * l1mz - au.v * lz);
  };
  KernelEval k;
  k.method = KernelMethod::ZQuadrature;
  k.value = tanh_sinh(f, 0.0, 1.0, 1e-11, depth);
  return k;
}

KernelEval kernel_L_diagonal(const VariableExponent& e, double t) {
  require_interior(e, "kernel_L");
  const Jet2 a = e.jet(t);
  KernelEval k;
  k.method = KernelMethod::Analytic;
  k.value =
      a.d1 * beta_fn(2.0 - a.v, a.v) * (digamma(a.v) - digamma(2.0 - a.v));
  return k;
}

KernelEval kernel_RL(const VariableExponent& e, double y, double t) {
  check_pair(e, y, t, "kernel_RL");
  const double d = t - y;
  const Jet2 at = e.jet(t);
  const double gap = exponent_gap(e, y, t);
  const double ld = std::log(d);
  const double pq = std::exp(gap * ld) / gamma_fn(1.0 + gap);

  KernelEval k;
  k.method = KernelMethod::Analytic;
  k.log_singular_part = pq * at.d1;
  const double smooth = pq * (gap / d - at.d1 * digamma(1.0 + gap));
  k.value = smooth + k.log_singular_part * ld;
  return k;
}

KernelEval kernel_RL_diagonal(const VariableExponent& e, double t) {
  if (!std::isfinite(t) || t < 0.0 || t > e.horizon() * (1.0 + 1e-12)) {
    throw InvalidParam("kernel_RL: t outside [0, T]");
  }
  const Jet2 a = e.jet(t);
  KernelEval k;
  k.method = KernelMethod::Analytic;
  k.log_singular_part = a.d1;
  k.value = a.d1 * (1.0 - digamma(1.0));
  return k;
}

KernelEval kernel_M_dt(const TwoVarExponent& a2, double y, double t,
                       int n_z) {
  if (!a2.value || !a2.d1 || !a2.d2) {
    throw InvalidParam("kernel_M_dt: value, d1 and d2 must all be provided");
  }
  if (!std::isfinite(y) || !std::isfinite(t) || y < 0.0 ||
      !(t - y >= kMinSeparation)) {
    throw InvalidParam("kernel_M_dt: need 0 <= y < t");
  }
  const int depth = z_rule_depth(n_z, "kernel_M_dt");
  const double d = t - y;
  const double ld = std::log(d);
  const double um = 0.5 * (y + t);
  {
    const double Am = a2.value(um, y);
    const double Bm = a2.value(um, t);
    if (!(Am > 0.0) || !(Am < 1.0) || !(Bm > 0.0) || !(Bm < 1.0)) {
      throw RangeViolation("kernel_M_dt: exponent must lie in (0, 1)");
    }
  }
  auto f = [&](double /*z*/, double from0, double from1) {
    const double lz = std::log(from0);
    const double l1mz = std::log(from1);
    const double z = from0;
    const double u = d * z + y;
    const double A = a2.value(u, y);
    const double B = a2.value(u, t);
    const double dA = a2.d1(u, y) * z;
    const double dB = a2.d1(u, t) * z + a2.d2(u, t);
    const double gap_quot =
        (d < kQuotientGuard) ? -a2.d2(u, um) : (A - B) / d;
    const double bracket = (dA - dB) * ld + gap_quot - dB * l1mz + dA * lz +
                           dB * digamma(1.0 - B) - dA * digamma(A);
    const double base = std::exp((A - B) * ld - B * l1mz + (A - 1.0) * lz) /
                        (gamma_fn(1.0 - B) * gamma_fn(A));
    return base * bracket;
  };
  KernelEval k;
  k.method = KernelMethod::ZQuadrature;
  k.value = tanh_sinh(f, 0.0, 1.0, 1e-11, depth);
  return k;
}

namespace {

// Richardson-extrapolated central difference of F at t with base step h,
// assuming t - h/2 and t + h stay inside F's domain.
double richardson_fd(const std::function<double(double)>& F, double t,
                     double h) {
  const double d1 = (F(t + h) - F(t - h)) / (2.0 * h);
  const double d2 = (F(t + 0.5 * h) - F(t - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

double fd_step(const VariableExponent& e, double s, double t) {
  double h = 1e-5 * std::max(1.0, t);
  h = std::min(h, 0.25 * (t - s));
  const double room = e.horizon() - t;
  if (room > 0.0) h = std::min(h, room);
  return h;
}

KernelEval fd_route(const VariableExponent& e, double s, double t,
                    const std::function<double(double)>& F,
                    const char* who) {
  check_pair(e, s, t, who);
  const double h = fd_step(e, s, t);
  KernelEval k;
  k.method = KernelMethod::FiniteDifference;
  if (t + h <= e.horizon()) {
    k.value = richardson_fd(F, t, h);
  } else {
    // No room above t: second-order one-sided difference.
    k.value = (3.0 * F(t) - 4.0 * F(t - h) + F(t - 2.0 * h)) / (2.0 * h);
  }
  return k;
}

}  // namespace

KernelEval kernel_K_fd(const VariableExponent& e, double s, double t) {
  require_interior(e, "kernel_K_fd");
  auto F = [&](double tau) {
    const double a = e(tau);
    const double as = e(s);
    return beta_fn(a, 1.0 - as) * std::exp((a - as) * std::log(tau - s));
  };
  return fd_route(e, s, t, F, "kernel_K_fd");
}

KernelEval kernel_RL_fd(const VariableExponent& e, double y, double t) {
  auto F = [&](double tau) {
    const double gap = e(tau) - e(y);
    return std::exp(gap * std::log(tau - y)) / gamma_fn(1.0 + gap);
  };
  return fd_route(e, y, t, F, "kernel_RL_fd");
}

}  // namespace fracvx
