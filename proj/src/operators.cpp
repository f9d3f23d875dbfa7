#include "fracvx/operators.hpp"

#include <cmath>

#include "fracvx/errors.hpp"
#include "fracvx/specialfn.hpp"

namespace fracvx {
namespace {

void require_interior(const VariableExponent& e, const char* who) {
  if (e.regime() != ExponentRegime::InteriorRange) {
    throw InvalidParam(std::string(who) +
                       ": exponent must stay strictly inside (0, 1)");
  }
}

void require_valid_sigma(double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw InvalidParam("tempered operator: sigma must be finite and >= 0");
  }
}

bool is_right_family(OperatorFamily f) {
  return f == OperatorFamily::AbelRight || f == OperatorFamily::RLRight ||
         f == OperatorFamily::TemperedRight;
}

}  // namespace

OperatorSpec OperatorSpec::abel_left(VariableExponent e) {
  require_interior(e, "abel_left");
  const double T = e.horizon();
  return OperatorSpec(OperatorFamily::AbelLeft, std::move(e), std::nullopt,
                      0.0, T);
}

OperatorSpec OperatorSpec::abel_right(VariableExponent e) {
  require_interior(e, "abel_right");
  const double T = e.horizon();
  return OperatorSpec(OperatorFamily::AbelRight, std::move(e), std::nullopt,
                      0.0, T);
}

OperatorSpec OperatorSpec::rl_left(VariableExponent e) {
  const double T = e.horizon();
  return OperatorSpec(OperatorFamily::RLLeft, std::move(e), std::nullopt, 0.0,
                      T);
}

OperatorSpec OperatorSpec::rl_right(VariableExponent e) {
  const double T = e.horizon();
  return OperatorSpec(OperatorFamily::RLRight, std::move(e), std::nullopt, 0.0,
                      T);
}

OperatorSpec OperatorSpec::rl_general(TwoVarExponent e, double horizon) {
  if (!e.value || !e.d1 || !e.d2) {
    throw InvalidParam("rl_general: value, d1 and d2 must all be provided");
  }
  if (!std::isfinite(horizon) || horizon <= 0.0) {
    throw InvalidParam("rl_general: horizon must be finite and positive");
  }
  // Sample the closed triangle 0 <= s <= t <= T.
  const int n = 40;
  for (int i = 0; i <= n; ++i) {
    const double t = horizon * i / n;
    for (int j = 0; j <= i; ++j) {
      const double s = (i == 0) ? 0.0 : t * j / i;
      double v, g1, g2;
      try {
        v = e.value(t, s);
        g1 = e.d1(t, s);
        g2 = e.d2(t, s);
      } catch (const std::exception& ex) {
        throw NotSmooth(std::string("rl_general: exponent evaluation failed "
                                    "on the domain triangle: ") +
                        ex.what());
      }
      if (!std::isfinite(v) || !std::isfinite(g1) || !std::isfinite(g2)) {
        throw NotSmooth("rl_general: exponent or derivative not finite");
      }
      if (!(v > 0.0) || !(v < 1.0)) {
        throw RangeViolation("rl_general: exponent must lie in (0, 1)");
      }
    }
  }
  return OperatorSpec(OperatorFamily::RLGeneral, std::nullopt, std::move(e),
                      0.0, horizon);
}

OperatorSpec OperatorSpec::tempered_left(VariableExponent e, double sigma) {
  require_valid_sigma(sigma);
  const double T = e.horizon();
  return OperatorSpec(OperatorFamily::TemperedLeft, std::move(e), std::nullopt,
                      sigma, T);
}

OperatorSpec OperatorSpec::tempered_right(VariableExponent e, double sigma) {
  require_valid_sigma(sigma);
  const double T = e.horizon();
  return OperatorSpec(OperatorFamily::TemperedRight, std::move(e),
                      std::nullopt, sigma, T);
}

const VariableExponent& OperatorSpec::exponent() const {
  if (!exponent_) {
    throw InvalidParam("OperatorSpec: family has no scalar exponent");
  }
  return *exponent_;
}

const TwoVarExponent& OperatorSpec::exponent2() const {
  if (!exponent2_) {
    throw InvalidParam("OperatorSpec: family has no two-variable exponent");
  }
  return *exponent2_;
}

double eval_forward(const OperatorSpec& spec,
                    const std::function<double(double)>& g, double t,
                    double accuracy) {
  if (!std::isfinite(t) || t < 0.0 || t > spec.horizon() * (1.0 + 1e-12)) {
    throw InvalidParam("eval_forward: t outside [0, T]");
  }
  if (t == 0.0) return 0.0;
  if (!(accuracy > 0.0)) throw InvalidParam("eval_forward: bad accuracy");

  const OperatorFamily fam = spec.family();
  const double sigma = spec.sigma();

  // Integrand expressed through the cancellation-free distance t - s.
  auto density = [&](double s, double /*from0*/, double dist) -> double {
    const double lg = std::log(dist);
    double w = 0.0;
    switch (fam) {
      case OperatorFamily::AbelLeft:
        w = std::exp(-spec.exponent()(s) * lg);
        break;
      case OperatorFamily::AbelRight:
        w = std::exp(-spec.exponent()(t) * lg);
        break;
      case OperatorFamily::RLLeft: {
        const double a = spec.exponent()(s);
        w = std::exp((a - 1.0) * lg) / gamma_fn(a);
        break;
      }
      case OperatorFamily::RLRight: {
        const double a = spec.exponent()(t);
        w = std::exp((a - 1.0) * lg) / gamma_fn(a);
        break;
      }
      case OperatorFamily::RLGeneral: {
        const double a = spec.exponent2().value(t, s);
        w = std::exp((a - 1.0) * lg) / gamma_fn(a);
        break;
      }
      case OperatorFamily::TemperedLeft: {
        const double a = spec.exponent()(s);
        w = std::exp((a - 1.0) * lg - sigma * dist) / gamma_fn(a);
        break;
      }
      case OperatorFamily::TemperedRight: {
        const double a = spec.exponent()(t);
        w = std::exp((a - 1.0) * lg - sigma * dist) / gamma_fn(a);
        break;
      }
    }
    return g(s) * w;
  };

  return tanh_sinh(density, 0.0, t, accuracy);
}

std::vector<double> eval_forward_grid(const OperatorSpec& spec,
                                      const std::vector<double>& g_values,
                                      const GradedMesh& mesh) {
  const int N = mesh.N;
  if (g_values.size() != mesh.t.size()) {
    throw InvalidParam("eval_forward_grid: data size does not match mesh");
  }
  for (double v : g_values) {
    if (!std::isfinite(v)) {
      throw InvalidParam("eval_forward_grid: data must be finite");
    }
  }
  if (std::abs(mesh.T - spec.horizon()) > 1e-12 * spec.horizon()) {
    throw InvalidParam("eval_forward_grid: mesh horizon differs from spec");
  }

  const OperatorFamily fam = spec.family();
  const double sigma = spec.sigma();
  std::vector<double> out(static_cast<std::size_t>(N) + 1, 0.0);
  std::vector<double> data(static_cast<std::size_t>(N) + 1);

  for (int i = 1; i <= N; ++i) {
    const double ti = mesh.node(i);

    // Per-node smooth factors folded into the interpolated density.
    for (int j = 0; j <= i; ++j) {
      double v = g_values[j];
      switch (fam) {
        case OperatorFamily::RLLeft:
          v /= gamma_fn(spec.exponent()(mesh.node(j)));
          break;
        case OperatorFamily::TemperedLeft:
          v *= std::exp(-sigma * (ti - mesh.node(j))) /
               gamma_fn(spec.exponent()(mesh.node(j)));
          break;
        case OperatorFamily::TemperedRight:
          v *= std::exp(-sigma * (ti - mesh.node(j)));
          break;
        case OperatorFamily::RLGeneral:
          v /= gamma_fn(spec.exponent2().value(ti, mesh.node(j)));
          break;
        default:
          break;
      }
      data[j] = v;
    }

    double acc = 0.0;
    if (is_right_family(fam)) {
      const double a = spec.exponent()(ti);
      const double beta = (fam == OperatorFamily::AbelRight) ? a : 1.0 - a;
      const std::vector<double> w = product_weights(mesh, i, beta, false);
      for (int j = 0; j <= i; ++j) acc += w[j] * data[j];
      if (fam != OperatorFamily::AbelRight) acc /= gamma_fn(a);
    } else {
      for (int k = 1; k <= i; ++k) {
        const double a = mesh.node(k - 1);
        const double b = mesh.node(k);
        const double smid = 0.5 * (a + b);
        double beta;
        switch (fam) {
          case OperatorFamily::AbelLeft:
            beta = spec.exponent()(smid);
            break;
          case OperatorFamily::RLGeneral:
            beta = 1.0 - spec.exponent2().value(ti, smid);
            break;
          default:  // RLLeft, TemperedLeft
            beta = 1.0 - spec.exponent()(smid);
            break;
        }
        const PanelMoments pm = panel_moments(a, b, ti, beta, false);
        const double slope = pm.m1 / (b - a);
        acc += (pm.m0 - slope) * data[k - 1] + slope * data[k];
      }
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace fracvx
