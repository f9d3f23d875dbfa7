#include "fracvx/inversion.hpp"

#include <cmath>

#include "fracvx/errors.hpp"
#include "fracvx/kernels.hpp"
#include "fracvx/operators.hpp"
#include "fracvx/parallel.hpp"
#include "fracvx/specialfn.hpp"

namespace fracvx {
namespace {

void check_time(const VariableExponent& e, double t, const char* who) {
  if (!std::isfinite(t) || t < 0.0 || t > e.horizon() * (1.0 + 1e-12)) {
    throw InvalidParam(std::string(who) + ": t outside [0, T]");
  }
}

}  // namespace

RhsData make_rhs_data(const ScalarFunc& f) {
  RhsData d;
  d.value = [f](double t) { return f(t); };
  d.deriv = [f](double t) { return f.jet(t).d1; };
  d.at_zero = f(0.0);
  return d;
}

double rhs_abel(const VariableExponent& e, const RhsData& f, double t,
                double accuracy) {
  check_time(e, t, "rhs_abel");
  if (e.regime() != ExponentRegime::InteriorRange) {
    throw InvalidParam("rhs_abel: exponent must stay strictly inside (0, 1)");
  }
  if (!f.value || !f.deriv) {
    throw InvalidParam("rhs_abel: value and deriv must both be provided");
  }
  if (t == 0.0) {
    if (f.at_zero != 0.0) {
      throw DomainError("rhs_abel: unbounded at t = 0 when f(0) != 0");
    }
    return 0.0;
  }

  const Jet2 a = e.jet(t);
  const double boundary =
      (f.at_zero == 0.0)
          ? 0.0
          : f.at_zero * std::exp((a.v - 1.0) * std::log(t));

  // s runs over (0, t); s^(a-1) is singular at s = 0 and f'(t-s) may be
  // singular at s = t, so both distances matter.
  auto integrand = [&](double /*s*/, double from0, double fromt) {
    const double ls = std::log(from0);
    const double weight = std::exp((a.v - 1.0) * ls);
    double density = f.deriv(fromt);
    if (a.d1 != 0.0) density += a.d1 * ls * f.value(fromt);
    return density * weight;
  };
  return boundary + tanh_sinh(integrand, 0.0, t, accuracy);
}

double rhs_abel(const VariableExponent& e, const ScalarFunc& f, double t,
                double accuracy) {
  return rhs_abel(e, make_rhs_data(f), t, accuracy);
}

double rhs_fde(const VariableExponent& e,
               const std::function<double(double)>& h, double c0, double t,
               double accuracy) {
  check_time(e, t, "rhs_fde");
  if (!h) throw InvalidParam("rhs_fde: h must be provided");
  const bool touches = e.regime() == ExponentRegime::TouchesOneAtZero;
  if (t == 0.0) {
    if (c0 == 0.0) return 0.0;
    if (touches) return c0;  // continuous limit
    throw DomainError("rhs_fde: unbounded at t = 0 when c0 != 0");
  }

  const Jet2 a = e.jet(t);
  const double ga = gamma_fn(a.v);
  const double g1a = gamma_fn(1.0 + a.v);
  const double psi1a = digamma(1.0 + a.v);

  double c0_part = 0.0;
  if (c0 != 0.0) {
    if (t < 1e-14 && touches) {
      // Below resolution, substitute the t -> 0 limits of the power terms.
      c0_part = c0 / ga;
    } else {
      const double lt = std::log(t);
      c0_part = c0 * (std::exp((a.v - 1.0) * lt) / ga +
                      a.d1 * std::exp(a.v * lt) * (lt - psi1a) / g1a);
    }
  }

  auto integrand = [&](double y, double /*from0*/, double fromt) {
    const double lx = std::log(fromt);
    const double w = std::exp((a.v - 1.0) * lx) / ga +
                     a.d1 * std::exp(a.v * lx) * (lx - psi1a) / g1a;
    return h(y) * w;
  };
  return tanh_sinh(integrand, 0.0, t, accuracy) + c0_part;
}

double rhs_fde_interior(const VariableExponent& e,
                        const std::function<double(double)>& h, double t,
                        double accuracy) {
  check_time(e, t, "rhs_fde_interior");
  if (e.regime() != ExponentRegime::InteriorRange) {
    throw InvalidParam(
        "rhs_fde_interior: exponent must stay strictly inside (0, 1)");
  }
  if (!h) throw InvalidParam("rhs_fde_interior: h must be provided");
  if (t == 0.0) return 0.0;

  const Jet2 a = e.jet(t);
  auto integrand = [&](double y, double /*from0*/, double fromt) {
    const double lx = std::log(fromt);
    const double w = std::exp((a.v - 1.0) * lx) +
                     a.d1 * std::exp(a.v * lx) * (a.v * lx - 1.0) /
                         (a.v * a.v);
    return h(y) * w;
  };
  return tanh_sinh(integrand, 0.0, t, accuracy);
}

ComposeReport compose_residual(const VariableExponent& e, const ScalarFunc& g,
                               const GradedMesh& mesh, ComposeRoute which,
                               const ComposeOptions& opts) {
  if (e.regime() != ExponentRegime::InteriorRange) {
    throw InvalidParam(
        "compose_residual: exponent must stay strictly inside (0, 1)");
  }
  if (std::abs(mesh.T - e.horizon()) > 1e-12 * e.horizon()) {
    throw InvalidParam("compose_residual: mesh horizon differs from exponent");
  }
  const int N = mesh.N;
  if (N < 2) throw InvalidParam("compose_residual: need at least 2 panels");

  const VariableExponent comp = e.complement();
  const bool left_route = which == ComposeRoute::AbelLeftThenDhat;
  const OperatorSpec inner = left_route ? OperatorSpec::abel_left(e)
                                        : OperatorSpec::abel_right(e);
  const OperatorSpec outer = left_route ? OperatorSpec::abel_right(comp)
                                        : OperatorSpec::abel_left(comp);

  auto gfun = [g](double s) { return g(s); };
  auto composition = [&](double tau) {
    auto inner_value = [&](double y) {
      return eval_forward(inner, gfun, y, opts.quad_accuracy);
    };
    return eval_forward(outer, inner_value, tau, opts.quad_accuracy);
  };

  ComposeReport report;
  report.nodes.resize(N - 1);
  report.lhs.resize(N - 1);
  report.rhs.resize(N - 1);

  parallel_for(static_cast<std::size_t>(N - 1), [&](std::size_t idx) {
    const int i = static_cast<int>(idx) + 1;
    const double ti = mesh.node(i);
    report.nodes[idx] = ti;

    double h = std::min(opts.fd_step_scale * mesh.T,
                        std::min(0.5 * ti, 0.5 * (mesh.T - ti)));
    report.lhs[idx] =
        (composition(ti + h) - composition(ti - h)) / (2.0 * h);

    const std::vector<double> w0 = product_weights(mesh, i, 0.0, false);
    double acc = gamma_weight(e, ti) * g(ti);
    if (left_route) {
      const std::vector<double> wl = product_weights(mesh, i, 0.0, true);
      for (int j = 0; j <= i; ++j) {
        const KernelEval k = (j == i)
                                 ? kernel_K_diagonal(e, ti)
                                 : kernel_K(e, mesh.node(j), ti);
        const double smooth =
            (j == i) ? k.value
                     : k.value - k.log_singular_part *
                                     std::log(ti - mesh.node(j));
        acc += (w0[j] * smooth + wl[j] * k.log_singular_part) *
               g(mesh.node(j));
      }
    } else {
      for (int j = 0; j <= i; ++j) {
        const KernelEval k = (j == i)
                                 ? kernel_L_diagonal(e, ti)
                                 : kernel_L(e, mesh.node(j), ti, opts.n_z);
        acc += w0[j] * k.value * g(mesh.node(j));
      }
    }
    report.rhs[idx] = acc;
  });

  double worst = 0.0;
  for (int i = 0; i < N - 1; ++i) {
    worst = std::max(worst, std::fabs(report.lhs[i] - report.rhs[i]));
  }
  report.max_residual = worst;
  return report;
}

}  // namespace fracvx
