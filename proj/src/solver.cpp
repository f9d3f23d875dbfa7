#include "fracvx/solver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "fracvx/analysis.hpp"
#include "fracvx/errors.hpp"
#include "fracvx/kernels.hpp"
#include "fracvx/parallel.hpp"
#include "fracvx/specialfn.hpp"

namespace fracvx {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

KernelParts to_parts(const KernelEval& k, double s, double t, bool diagonal) {
  KernelParts p;
  p.log_coef = k.log_singular_part;
  p.smooth = diagonal ? k.value
                      : k.value - k.log_singular_part * std::log(t - s);
  return p;
}

// Derivative at x of the quadratic through (x0,y0), (x1,y1), (x2,y2).
double lagrange3_deriv(double x0, double x1, double x2, double y0, double y1,
                       double y2, double x) {
  return y0 * (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
         y1 * (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2)) +
         y2 * (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
}

std::vector<double> derivative_estimates(const GradedMesh& mesh,
                                         const std::vector<double>& u) {
  const int N = mesh.N;
  std::vector<double> du(static_cast<std::size_t>(N) + 1, kNaN);
  if (N < 3) {
    for (int i = 1; i <= N; ++i) {
      if (std::isfinite(u[i]) && std::isfinite(u[i - 1])) {
        du[i] = (u[i] - u[i - 1]) / mesh.width(i);
      }
    }
    return du;
  }
  for (int i = 1; i <= N; ++i) {
    // Never let the stencil touch node 0, which may be singular.
    int base = i - 1;
    if (base < 1) base = 1;
    if (base > N - 2) base = N - 2;
    du[i] = lagrange3_deriv(mesh.node(base), mesh.node(base + 1),
                            mesh.node(base + 2), u[base], u[base + 1],
                            u[base + 2], mesh.node(i));
  }
  return du;
}

void finalize(SolutionGrid& grid, const VariableExponent& e) {
  const int N = grid.mesh.N;
  const double a0 = e(0.0);
  grid.alpha_at_zero = a0;
  const double wexp = 1.0 - a0;

  grid.weighted_u.assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int j = 0; j <= N; ++j) {
    grid.weighted_u[j] = std::pow(grid.mesh.node(j), wexp) * grid.u[j];
  }
  grid.du_estimate = derivative_estimates(grid.mesh, grid.u);
  try {
    grid.fitted_exponent = fit_singularity_exponent(grid).exponent_p;
  } catch (const Error&) {
    grid.fitted_exponent = kNaN;
  }
}

}  // namespace

Vie2Kernel vie2_kernel_zero() {
  Vie2Kernel k;
  k.off_diagonal = [](double, double) { return KernelParts{}; };
  k.diagonal = [](double) { return KernelParts{}; };
  return k;
}

Vie2Kernel vie2_kernel_K(const VariableExponent& e) {
  Vie2Kernel k;
  k.off_diagonal = [e](double s, double t) {
    return to_parts(kernel_K(e, s, t), s, t, false);
  };
  k.diagonal = [e](double t) {
    return to_parts(kernel_K_diagonal(e, t), t, t, true);
  };
  return k;
}

Vie2Kernel vie2_kernel_RL(const VariableExponent& e) {
  Vie2Kernel k;
  k.off_diagonal = [e](double s, double t) {
    return to_parts(kernel_RL(e, s, t), s, t, false);
  };
  k.diagonal = [e](double t) {
    return to_parts(kernel_RL_diagonal(e, t), t, t, true);
  };
  return k;
}

std::vector<double> solve_vie2(const VariableExponent& e,
                               const std::vector<double>& rhs,
                               const GradedMesh& mesh,
                               const Vie2Kernel& kernel,
                               const Vie2Options& opts) {
  const int N = mesh.N;
  if (rhs.size() != mesh.t.size()) {
    throw InvalidParam("solve_vie2: rhs size does not match mesh");
  }
  if (!kernel.off_diagonal || !kernel.diagonal) {
    throw InvalidParam("solve_vie2: kernel callbacks must be provided");
  }

  std::vector<double> v(static_cast<std::size_t>(N) + 1, kNaN);
  const bool have_v0 = opts.value_at_zero.has_value();
  if (have_v0) v[0] = *opts.value_at_zero;

  for (int i = 1; i <= N; ++i) {
    const double ti = mesh.node(i);
    const double gi = (opts.gamma_mode == GammaMode::GammaWeight)
                          ? gamma_weight(e, ti)
                          : 1.0;
    const std::vector<double> w0 = product_weights(mesh, i, 0.0, false);
    const std::vector<double> wl = product_weights(mesh, i, 0.0, true);

    double acc = 0.0;
    for (int j = have_v0 ? 0 : 1; j < i; ++j) {
      const KernelParts k = kernel.off_diagonal(mesh.node(j), ti);
      acc += (w0[j] * k.smooth + wl[j] * k.log_coef) * v[j];
    }
    const KernelParts kd = kernel.diagonal(ti);
    const double cii = w0[i] * kd.smooth + wl[i] * kd.log_coef;
    if (std::fabs(1.0 + cii / gi) < 1e-8) {
      throw QuadratureError("solve_vie2: near-singular diagonal entry");
    }
    v[i] = (rhs[i] - acc) / (gi + cii);
  }
  return v;
}

AbelProblem abel_problem(VariableExponent e, const ScalarFunc& f) {
  return AbelProblem{std::move(e), make_rhs_data(f)};
}

AbelProblem abel_problem(VariableExponent e, RhsData f) {
  if (!f.value || !f.deriv) {
    throw InvalidParam("abel_problem: f needs value and deriv callbacks");
  }
  return AbelProblem{std::move(e), std::move(f)};
}

FdeProblem fde_problem(VariableExponent e, const ScalarFunc& h, double u0) {
  return FdeProblem{std::move(e), [h](double t) { return h(t); }, u0};
}

FdeProblem fde_problem(VariableExponent e, std::function<double(double)> h,
                       double u0) {
  if (!h) throw InvalidParam("fde_problem: h must be provided");
  return FdeProblem{std::move(e), std::move(h), u0};
}

double default_grading(const VariableExponent& e) {
  if (e.regime() == ExponentRegime::InteriorRange) return 4.0;
  return std::fabs(e.jet(0.0).d1) < 1e-12 ? 1.0 : 2.0;
}

SolutionGrid solve_abel(const AbelProblem& p, const GradedMesh& mesh,
                        double rhs_accuracy) {
  const VariableExponent& e = p.exponent;
  if (e.regime() != ExponentRegime::InteriorRange) {
    throw InvalidParam("solve_abel: exponent must stay strictly inside (0,1)");
  }
  const int N = mesh.N;

  std::vector<double> rhs(static_cast<std::size_t>(N) + 1, 0.0);
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t idx) {
    const int i = static_cast<int>(idx) + 1;
    rhs[i] = rhs_abel(e, p.f, mesh.node(i), rhs_accuracy);
  });

  Vie2Options opts;
  opts.gamma_mode = GammaMode::GammaWeight;
  if (p.f.at_zero != 0.0) {
    opts.value_at_zero.reset();  // u blows up at the origin
  } else {
    // Limit of the second-kind equation as t -> 0: the kernel integral
    // vanishes, so v(0) = rhs(0+) / gamma(0+). Evaluated just above 0 so
    // data with unbounded derivative (f continuous, f' singular) also gets
    // its correct finite limit.
    const double eps = mesh.T * 1e-12;
    opts.value_at_zero =
        rhs_abel(e, p.f, eps, rhs_accuracy) / gamma_weight(e, eps);
  }

  SolutionGrid grid;
  grid.mesh = mesh;
  grid.u = solve_vie2(e, rhs, mesh, vie2_kernel_K(e), opts);
  if (p.f.at_zero != 0.0) {
    grid.u[0] = p.f.at_zero > 0.0
                    ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
  }
  finalize(grid, e);
  if (p.f.at_zero != 0.0) {
    grid.weighted_u[0] = p.f.at_zero / gamma_weight(e, 0.0);
  }
  return grid;
}

SolutionGrid solve_fde(const FdeProblem& p, const GradedMesh& mesh,
                       double rhs_accuracy) {
  const VariableExponent& e = p.exponent;
  if (!p.h) throw InvalidParam("solve_fde: h must be provided");
  const int N = mesh.N;

  SolutionGrid grid;
  grid.mesh = mesh;

  if (e.regime() == ExponentRegime::InteriorRange) {
    if (p.u0 != 0.0) {
      throw IllPosedError(
          "solve_fde: with the exponent strictly inside (0, 1) the solution "
          "always satisfies u(0) = 0; a nonzero initial value is ill-posed");
    }
    std::vector<double> rhs(static_cast<std::size_t>(N) + 1, 0.0);
    parallel_for(static_cast<std::size_t>(N), [&](std::size_t idx) {
      const int i = static_cast<int>(idx) + 1;
      rhs[i] = rhs_fde_interior(e, p.h, mesh.node(i), rhs_accuracy);
    });
    Vie2Options opts;
    opts.gamma_mode = GammaMode::GammaWeight;
    opts.value_at_zero = 0.0;
    // The equation is posed for u / Gamma(1 - alpha); scale back afterwards.
    grid.u = solve_vie2(e, rhs, mesh, vie2_kernel_K(e), opts);
    for (int j = 0; j <= N; ++j) {
      grid.u[j] *= gamma_fn(1.0 - e(mesh.node(j)));
    }
  } else {
    std::vector<double> rhs(static_cast<std::size_t>(N) + 1, 0.0);
    parallel_for(static_cast<std::size_t>(N), [&](std::size_t idx) {
      const int i = static_cast<int>(idx) + 1;
      rhs[i] = rhs_fde(e, p.h, p.u0, mesh.node(i), rhs_accuracy);
    });
    Vie2Options opts;
    opts.gamma_mode = GammaMode::Unit;
    opts.value_at_zero = p.u0;
    grid.u = solve_vie2(e, rhs, mesh, vie2_kernel_RL(e), opts);
  }

  finalize(grid, e);
  return grid;
}

namespace {

void append_number(std::string& line, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  line += buf;
}

}  // namespace

void write_csv(const SolutionGrid& grid, std::ostream& out) {
  out << "t,u,weighted_u,du_estimate\n";
  const int N = grid.mesh.N;
  for (int j = 0; j <= N; ++j) {
    std::string line;
    append_number(line, grid.mesh.node(j));
    line += ',';
    append_number(line, grid.u[j]);
    line += ',';
    append_number(line, grid.weighted_u[j]);
    line += ',';
    append_number(line, grid.du_estimate[j]);
    line += '\n';
    out << line;
  }
}

void write_csv(const SolutionGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParam("write_csv: cannot open " + path);
  write_csv(grid, out);
}

}  // namespace fracvx
