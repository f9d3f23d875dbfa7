// fracvx: command-line front end for the variable-exponent fractional
// calculus library. Subcommands: eval, solve-abel, solve-fde, verify,
// convergence. Exit codes: 0 success, 2 configuration error, 3 numerical
// failure, 4 ill-posed problem. (verify returns 1 when it runs to completion
// but at least one check fails.)

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracvx/analysis.hpp"
#include "fracvx/errors.hpp"
#include "fracvx/solver.hpp"

namespace {

struct EvalArgs {
  std::string family = "abel-left";
  std::string alpha;
  std::string g;
  double t = 0.0;
  double T = 0.0;  // 0 = use t
  double sigma = 0.0;
  double accuracy = 1e-11;
};

struct SolveArgs {
  std::string alpha;
  std::string data;  // f or h
  double u0 = 0.0;
  double T = 1.0;
  int N = 128;
  double r = 0.0;  // 0 = regime default
  std::string out;
  double accuracy = 1e-10;
};

struct VerifyArgs {
  std::string alpha;
  std::string g = "1 + t^2";
  double u0 = 2.0;
  double T = 1.0;
  int N = 128;
  double tolerance = 1e-3;
  std::string out;
};

struct ConvergenceArgs {
  std::string alpha;
  std::string problem = "abel";
  std::string f;
  std::string h;
  double u0 = 0.0;
  double T = 1.0;
  int N = 64;
  int levels = 3;
  double r = 0.0;
  std::string exact;
  std::string out;
};

fracvx::OperatorSpec spec_for(const std::string& family,
                              const fracvx::VariableExponent& e,
                              double sigma) {
  if (family == "abel-left") return fracvx::OperatorSpec::abel_left(e);
  if (family == "abel-right") return fracvx::OperatorSpec::abel_right(e);
  if (family == "rl-left") return fracvx::OperatorSpec::rl_left(e);
  if (family == "rl-right") return fracvx::OperatorSpec::rl_right(e);
  if (family == "tempered-left")
    return fracvx::OperatorSpec::tempered_left(e, sigma);
  return fracvx::OperatorSpec::tempered_right(e, sigma);
}

void run_eval(const EvalArgs& a) {
  const double T = a.T > 0.0 ? a.T : a.t;
  const auto e = fracvx::make_exponent(fracvx::ScalarFunc::parse(a.alpha), T);
  const auto spec = spec_for(a.family, e, a.sigma);
  const fracvx::ScalarFunc g = fracvx::ScalarFunc::parse(a.g);
  const double v = fracvx::eval_forward(
      spec, [&g](double s) { return g(s); }, a.t, a.accuracy);
  std::printf("%.17g\n", v);
}

double effective_grading(double requested,
                         const fracvx::VariableExponent& e) {
  return requested > 0.0 ? requested : fracvx::default_grading(e);
}

void emit_solution(const fracvx::SolutionGrid& grid, const std::string& out) {
  if (out.empty()) {
    fracvx::write_csv(grid, std::cout);
    return;
  }
  fracvx::write_csv(grid, out);
  std::printf("wrote %zu nodes to %s\n", grid.u.size(), out.c_str());
  std::printf("alpha(0) = %.6g, fitted exponent near zero = %.6g\n",
              grid.alpha_at_zero, grid.fitted_exponent);
}

void run_solve_abel(const SolveArgs& a) {
  const auto e = fracvx::make_exponent(fracvx::ScalarFunc::parse(a.alpha),
                                       a.T);
  const auto mesh =
      fracvx::graded_mesh(a.T, a.N, effective_grading(a.r, e));
  const auto p = fracvx::abel_problem(e, fracvx::ScalarFunc::parse(a.data));
  emit_solution(fracvx::solve_abel(p, mesh, a.accuracy), a.out);
}

void run_solve_fde(const SolveArgs& a) {
  const auto e = fracvx::make_exponent(fracvx::ScalarFunc::parse(a.alpha),
                                       a.T);
  const auto mesh =
      fracvx::graded_mesh(a.T, a.N, effective_grading(a.r, e));
  const auto p =
      fracvx::fde_problem(e, fracvx::ScalarFunc::parse(a.data), a.u0);
  emit_solution(fracvx::solve_fde(p, mesh, a.accuracy), a.out);
}

int run_verify(const VerifyArgs& a) {
  const auto e = fracvx::make_exponent(fracvx::ScalarFunc::parse(a.alpha),
                                       a.T);
  std::vector<fracvx::ExperimentCheck> checks;
  if (e.regime() == fracvx::ExponentRegime::InteriorRange) {
    const auto g = fracvx::ScalarFunc::parse(a.g);
    checks = fracvx::verify_composition(e, g, std::min(a.N, 96),
                                        a.tolerance);
    auto more = fracvx::verify_singularity(e, a.N);
    checks.insert(checks.end(), more.begin(), more.end());
  } else {
    checks = fracvx::verify_initial_value(e, a.N, a.u0);
  }
  fracvx::write_checks_summary(checks, std::cout);
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw fracvx::InvalidParam("cannot open output file: " + a.out);
    fracvx::write_checks_csv(checks, f);
  }
  for (const auto& c : checks) {
    if (!c.pass) return 1;
  }
  return 0;
}

void run_convergence(const ConvergenceArgs& a) {
  if (a.levels < 2 || a.levels > 12) {
    throw fracvx::InvalidParam("convergence: levels must be in [2, 12]");
  }
  const auto e = fracvx::make_exponent(fracvx::ScalarFunc::parse(a.alpha),
                                       a.T);
  const double r = effective_grading(a.r, e);
  const bool fde = a.problem == "fde";
  if (fde && a.h.empty()) {
    throw fracvx::InvalidParam("convergence: --h is required for fde");
  }
  if (!fde && a.f.empty()) {
    throw fracvx::InvalidParam("convergence: --f is required for abel");
  }

  std::vector<fracvx::SolutionGrid> grids;
  std::vector<int> Ns;
  for (int k = 0; k < a.levels + (a.exact.empty() ? 1 : 0); ++k) {
    const int N = a.N << k;
    const auto mesh = fracvx::graded_mesh(a.T, N, r);
    if (fde) {
      const auto p =
          fracvx::fde_problem(e, fracvx::ScalarFunc::parse(a.h), a.u0);
      grids.push_back(fracvx::solve_fde(p, mesh));
    } else {
      const auto p =
          fracvx::abel_problem(e, fracvx::ScalarFunc::parse(a.f));
      grids.push_back(fracvx::solve_abel(p, mesh));
    }
    Ns.push_back(N);
  }

  std::vector<double> errors;
  std::vector<int> errNs;
  if (!a.exact.empty()) {
    const auto exact = fracvx::ScalarFunc::parse(a.exact);
    for (std::size_t k = 0; k < grids.size(); ++k) {
      double worst = 0.0;
      for (int j = 1; j <= grids[k].mesh.N; ++j) {
        worst = std::max(worst, std::fabs(grids[k].u[j] -
                                          exact(grids[k].mesh.node(j))));
      }
      errors.push_back(worst);
      errNs.push_back(Ns[k]);
    }
  } else {
    // Self-convergence: meshes with the same grading nest under doubling, so
    // node j of mesh N coincides with node 2j of mesh 2N.
    for (std::size_t k = 0; k + 1 < grids.size(); ++k) {
      double worst = 0.0;
      for (int j = 1; j <= grids[k].mesh.N; ++j) {
        worst = std::max(worst,
                         std::fabs(grids[k].u[j] - grids[k + 1].u[2 * j]));
      }
      errors.push_back(worst);
      errNs.push_back(Ns[k]);
    }
  }

  std::string csv = "N,error,order\n";
  char line[96];
  for (std::size_t k = 0; k < errors.size(); ++k) {
    double order = std::numeric_limits<double>::quiet_NaN();
    if (k > 0 && errors[k] > 0.0 && errors[k - 1] > 0.0) {
      order = std::log2(errors[k - 1] / errors[k]);
    }
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g\n", errNs[k],
                  errors[k], order);
    csv += line;
  }
  if (a.out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw fracvx::InvalidParam("cannot open output file: " + a.out);
    f << csv;
    std::printf("wrote %zu rows to %s\n", errors.size(), a.out.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fracvx: variable-exponent Abel and fractional-calculus toolkit.\n"
      "Environment: FRACVX_THREADS caps the worker pool."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read options from an INI file (command-line flags win)");
  std::string dump_path;
  app.add_option("--dump-config", dump_path,
                 "Write the effective configuration to a file, then run")
      ->configurable(false);

  EvalArgs ev;
  auto* eval = app.add_subcommand(
      "eval", "Apply a forward integral operator to data g at time t");
  eval->fallthrough();
  eval->add_option("--family", ev.family, "Operator family")
      ->check(CLI::IsMember({"abel-left", "abel-right", "rl-left", "rl-right",
                             "tempered-left", "tempered-right"}))
      ->capture_default_str();
  eval->add_option("--alpha", ev.alpha, "Exponent expression in t")
      ->required();
  eval->add_option("--g", ev.g, "Data expression in t")->required();
  eval->add_option("--t", ev.t, "Evaluation time")->required();
  eval->add_option("--T", ev.T, "Horizon (defaults to t)");
  eval->add_option("--sigma", ev.sigma, "Tempering rate (tempered families)")
      ->capture_default_str();
  eval->add_option("--accuracy", ev.accuracy, "Quadrature accuracy")
      ->capture_default_str();

  SolveArgs ab;
  auto* solve_abel_cmd = app.add_subcommand(
      "solve-abel", "Solve the first-kind equation with data f");
  solve_abel_cmd->fallthrough();
  solve_abel_cmd->add_option("--alpha", ab.alpha, "Exponent expression")
      ->required();
  solve_abel_cmd->add_option("--f", ab.data, "Data expression")->required();
  solve_abel_cmd->add_option("--T", ab.T, "Horizon")->capture_default_str();
  solve_abel_cmd->add_option("--N", ab.N, "Mesh intervals")
      ->capture_default_str();
  solve_abel_cmd->add_option("-r,--grading", ab.r,
                             "Mesh grading exponent (default: by regime)");
  solve_abel_cmd->add_option("--out", ab.out,
                             "CSV output path (default: stdout)");
  solve_abel_cmd->add_option("--accuracy", ab.accuracy,
                             "Right-hand-side quadrature accuracy")
      ->capture_default_str();

  SolveArgs fd;
  auto* solve_fde_cmd = app.add_subcommand(
      "solve-fde", "Solve the fractional Cauchy problem with source h");
  solve_fde_cmd->fallthrough();
  solve_fde_cmd->set_help_flag("--help", "Print this help message and exit");
  solve_fde_cmd->add_option("--alpha", fd.alpha, "Exponent expression")
      ->required();
  solve_fde_cmd->add_option("--h", fd.data, "Source expression")->required();
  solve_fde_cmd->add_option("--u0", fd.u0, "Initial value")
      ->capture_default_str();
  solve_fde_cmd->add_option("--T", fd.T, "Horizon")->capture_default_str();
  solve_fde_cmd->add_option("--N", fd.N, "Mesh intervals")
      ->capture_default_str();
  solve_fde_cmd->add_option("-r,--grading", fd.r,
                            "Mesh grading exponent (default: by regime)");
  solve_fde_cmd->add_option("--out", fd.out,
                            "CSV output path (default: stdout)");
  solve_fde_cmd->add_option("--accuracy", fd.accuracy,
                            "Right-hand-side quadrature accuracy")
      ->capture_default_str();

  VerifyArgs vf;
  auto* verify = app.add_subcommand(
      "verify",
      "Run the predicted-behavior checks for an exponent (composition "
      "residuals and singularity/initial-value experiments)");
  verify->fallthrough();
  verify->add_option("--alpha", vf.alpha, "Exponent expression")->required();
  verify->add_option("--T", vf.T, "Horizon")->capture_default_str();
  verify->add_option("--N", vf.N, "Mesh intervals")->capture_default_str();
  verify->add_option("--g", vf.g, "Composition data expression")
      ->capture_default_str();
  verify->add_option("--u0", vf.u0, "Initial value for the touching regime")
      ->capture_default_str();
  verify->add_option("--tolerance", vf.tolerance,
                     "Composition residual tolerance")
      ->capture_default_str();
  verify->add_option("--out", vf.out, "Checks CSV output path");

  ConvergenceArgs cv;
  auto* conv = app.add_subcommand(
      "convergence", "Error/order table over a doubling mesh sequence");
  conv->fallthrough();
  conv->set_help_flag("--help", "Print this help message and exit");
  conv->add_option("--alpha", cv.alpha, "Exponent expression")->required();
  conv->add_option("--problem", cv.problem, "Problem kind")
      ->check(CLI::IsMember({"abel", "fde"}))
      ->capture_default_str();
  conv->add_option("--f", cv.f, "Abel data expression");
  conv->add_option("--h", cv.h, "Cauchy source expression");
  conv->add_option("--u0", cv.u0, "Initial value (fde)")
      ->capture_default_str();
  conv->add_option("--T", cv.T, "Horizon")->capture_default_str();
  conv->add_option("--N", cv.N, "Coarsest mesh size")->capture_default_str();
  conv->add_option("--levels", cv.levels, "Number of table rows")
      ->capture_default_str();
  conv->add_option("-r,--grading", cv.r,
                   "Mesh grading exponent (default: by regime)");
  conv->add_option("--exact", cv.exact,
                   "Exact solution expression (default: self-convergence)");
  conv->add_option("--out", cv.out, "CSV output path (default: stdout)");

  try {
    app.parse(argc, argv);
    if (!dump_path.empty()) {
      std::ofstream f(dump_path, std::ios::binary);
      if (!f) {
        throw fracvx::InvalidParam("cannot open config dump path: " +
                                   dump_path);
      }
      f << app.config_to_str(true, false);
    }
    if (eval->parsed()) {
      run_eval(ev);
    } else if (solve_abel_cmd->parsed()) {
      run_solve_abel(ab);
    } else if (solve_fde_cmd->parsed()) {
      run_solve_fde(fd);
    } else if (verify->parsed()) {
      return run_verify(vf);
    } else if (conv->parsed()) {
      run_convergence(cv);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    std::cerr << app.help();
    return 2;
  } catch (const fracvx::IllPosedError& e) {
    std::cerr << "fracvx: " << e.what() << "\n";
    return 4;
  } catch (const fracvx::DomainError& e) {
    std::cerr << "fracvx: " << e.what() << "\n";
    return 3;
  } catch (const fracvx::QuadratureError& e) {
    std::cerr << "fracvx: " << e.what() << "\n";
    return 3;
  } catch (const fracvx::Error& e) {
    std::cerr << "fracvx: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fracvx: " << e.what() << "\n";
    return 3;
  }
}
