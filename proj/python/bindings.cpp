#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>

#include "fracvx/analysis.hpp"
#include "fracvx/errors.hpp"
#include "fracvx/exponent.hpp"
#include "fracvx/inversion.hpp"
#include "fracvx/operators.hpp"
#include "fracvx/quadrature.hpp"
#include "fracvx/solver.hpp"

namespace py = pybind11;

namespace fracvx {
namespace {

OperatorSpec spec_from_name(const std::string& family,
                            const VariableExponent& e, double sigma) {
  if (family == "abel-left") return OperatorSpec::abel_left(e);
  if (family == "abel-right") return OperatorSpec::abel_right(e);
  if (family == "rl-left") return OperatorSpec::rl_left(e);
  if (family == "rl-right") return OperatorSpec::rl_right(e);
  if (family == "tempered-left") return OperatorSpec::tempered_left(e, sigma);
  if (family == "tempered-right")
    return OperatorSpec::tempered_right(e, sigma);
  throw InvalidParam("unknown operator family: " + family);
}

ComposeRoute route_from_name(const std::string& route) {
  if (route == "left") return ComposeRoute::AbelLeftThenDhat;
  if (route == "right") return ComposeRoute::AbelRightThenD;
  throw InvalidParam("route must be 'left' or 'right'");
}

GradedMesh mesh_for(const VariableExponent& e, int N,
                    std::optional<double> r) {
  return graded_mesh(e.horizon(), N, r ? *r : default_grading(e));
}

}  // namespace

PYBIND11_MODULE(_fracvx, m) {
  m.doc() = "Variable-exponent fractional integrals and Abel-type solvers";

  const auto base = py::register_exception<Error>(m, "FracvxError");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<RangeViolation>(m, "RangeViolation", base);
  py::register_exception<NotSmooth>(m, "NotSmooth", base);
  py::register_exception<InvalidParam>(m, "InvalidParam", base);
  py::register_exception<QuadratureError>(m, "QuadratureError", base);
  py::register_exception<IllPosedError>(m, "IllPosedError", base);

  py::class_<ScalarFunc>(m, "ScalarFunc",
                         "Scalar function of t parsed from expression text")
      .def_static(
          "parse", [](const std::string& text) { return ScalarFunc::parse(text); },
          py::arg("text"))
      .def_static("constant", &ScalarFunc::constant, py::arg("c"))
      .def("__call__",
           [](const ScalarFunc& f, double t) { return f(t); }, py::arg("t"))
      .def(
          "jet",
          [](const ScalarFunc& f, double t) {
            const Jet2 j = f.jet(t);
            return py::make_tuple(j.v, j.d1, j.d2);
          },
          py::arg("t"), "Value with first and second derivative at t")
      .def_property_readonly("source", &ScalarFunc::source)
      .def("printed", &ScalarFunc::printed)
      .def("__repr__", [](const ScalarFunc& f) {
        return "ScalarFunc(\"" + f.source() + "\")";
      });

  m.def(
      "parse", [](const std::string& text) { return ScalarFunc::parse(text); },
      py::arg("text"), "Parse expression text into a ScalarFunc");

  py::class_<VariableExponent>(m, "VariableExponent",
                               "Validated exponent alpha(t) on [0, T]")
      .def("__call__",
           [](const VariableExponent& e, double t) { return e(t); },
           py::arg("t"))
      .def_property_readonly("horizon", &VariableExponent::horizon)
      .def_property_readonly("at_zero", &VariableExponent::at_zero)
      .def_property_readonly("lower_bound", &VariableExponent::lower_bound)
      .def_property_readonly("upper_bound", &VariableExponent::upper_bound)
      .def_property_readonly(
          "regime",
          [](const VariableExponent& e) {
            return e.regime() == ExponentRegime::TouchesOneAtZero
                       ? "touches-one-at-zero"
                       : "interior";
          })
      .def("__repr__", [](const VariableExponent& e) {
        return "VariableExponent(\"" + e.alpha().source() + "\", T=" +
               std::to_string(e.horizon()) + ")";
      });

  m.def(
      "make_exponent",
      [](const ScalarFunc& alpha, double T, int validation_intervals) {
        return make_exponent(alpha, T, validation_intervals);
      },
      py::arg("alpha"), py::arg("T"), py::arg("validation_intervals") = 10000);
  m.def(
      "make_exponent",
      [](const std::string& alpha, double T, int validation_intervals) {
        return make_exponent(ScalarFunc::parse(alpha), T,
                             validation_intervals);
      },
      py::arg("alpha"), py::arg("T"), py::arg("validation_intervals") = 10000,
      "Parse and validate an exponent function on [0, T]");

  py::class_<GradedMesh>(m, "GradedMesh")
      .def_readonly("T", &GradedMesh::T)
      .def_readonly("N", &GradedMesh::N)
      .def_readonly("r", &GradedMesh::r)
      .def_readonly("nodes", &GradedMesh::t);

  m.def("graded_mesh", &graded_mesh, py::arg("T"), py::arg("N"), py::arg("r"),
        "Nodes T (j/N)^r for j = 0..N");
  m.def("default_grading", &default_grading, py::arg("exponent"),
        "Mesh grading suited to the exponent regime");

  py::class_<SolutionGrid>(m, "SolutionGrid",
                           "Discrete solution with singularity diagnostics")
      .def_property_readonly(
          "t", [](const SolutionGrid& g) { return g.mesh.t; })
      .def_readonly("u", &SolutionGrid::u)
      .def_readonly("weighted_u", &SolutionGrid::weighted_u)
      .def_readonly("du_estimate", &SolutionGrid::du_estimate)
      .def_readonly("fitted_exponent", &SolutionGrid::fitted_exponent)
      .def_readonly("alpha_at_zero", &SolutionGrid::alpha_at_zero)
      .def(
          "write_csv",
          [](const SolutionGrid& g, const std::string& path) {
            write_csv(g, path);
          },
          py::arg("path"),
          "CSV with header t,u,weighted_u,du_estimate at 17 digits");

  m.def(
      "eval_forward",
      [](const std::string& family, const VariableExponent& e,
         const ScalarFunc& g, double t, double sigma, double accuracy) {
        return eval_forward(spec_from_name(family, e, sigma),
                            [&](double s) { return g(s); }, t, accuracy);
      },
      py::arg("family"), py::arg("exponent"), py::arg("g"), py::arg("t"),
      py::arg("sigma") = 0.0, py::arg("accuracy") = 1e-11);
  m.def(
      "eval_forward",
      [](const std::string& family, const VariableExponent& e,
         const std::string& g, double t, double sigma, double accuracy) {
        const ScalarFunc gf = ScalarFunc::parse(g);
        return eval_forward(spec_from_name(family, e, sigma),
                            [&](double s) { return gf(s); }, t, accuracy);
      },
      py::arg("family"), py::arg("exponent"), py::arg("g"), py::arg("t"),
      py::arg("sigma") = 0.0, py::arg("accuracy") = 1e-11);
  m.def(
      "eval_forward",
      [](const std::string& family, const VariableExponent& e,
         std::function<double(double)> g, double t, double sigma,
         double accuracy) {
        return eval_forward(spec_from_name(family, e, sigma), g, t, accuracy);
      },
      py::arg("family"), py::arg("exponent"), py::arg("g"), py::arg("t"),
      py::arg("sigma") = 0.0, py::arg("accuracy") = 1e-11,
      "Adaptive evaluation of the named operator applied to g at time t");

  m.def(
      "solve_abel",
      [](const VariableExponent& e, const ScalarFunc& f, int N,
         std::optional<double> r, double accuracy) {
        return solve_abel(abel_problem(e, f), mesh_for(e, N, r), accuracy);
      },
      py::arg("exponent"), py::arg("f"), py::arg("N"),
      py::arg("r") = py::none(), py::arg("accuracy") = 1e-10);
  m.def(
      "solve_abel",
      [](const VariableExponent& e, const std::string& f, int N,
         std::optional<double> r, double accuracy) {
        return solve_abel(abel_problem(e, ScalarFunc::parse(f)),
                          mesh_for(e, N, r), accuracy);
      },
      py::arg("exponent"), py::arg("f"), py::arg("N"),
      py::arg("r") = py::none(), py::arg("accuracy") = 1e-10,
      "Solve the first-kind equation int_0^t u(s) (t-s)^(-alpha(s)) ds = f");

  m.def(
      "solve_fde",
      [](const VariableExponent& e, const ScalarFunc& h, double u0, int N,
         std::optional<double> r, double accuracy) {
        return solve_fde(fde_problem(e, h, u0), mesh_for(e, N, r), accuracy);
      },
      py::arg("exponent"), py::arg("h"), py::arg("u0") = 0.0, py::arg("N") = 128,
      py::arg("r") = py::none(), py::arg("accuracy") = 1e-10);
  m.def(
      "solve_fde",
      [](const VariableExponent& e, const std::string& h, double u0, int N,
         std::optional<double> r, double accuracy) {
        return solve_fde(fde_problem(e, ScalarFunc::parse(h), u0),
                         mesh_for(e, N, r), accuracy);
      },
      py::arg("exponent"), py::arg("h"), py::arg("u0") = 0.0, py::arg("N") = 128,
      py::arg("r") = py::none(), py::arg("accuracy") = 1e-10);
  m.def(
      "solve_fde",
      [](const VariableExponent& e, std::function<double(double)> h, double u0,
         int N, std::optional<double> r, double accuracy) {
        return solve_fde(fde_problem(e, std::move(h), u0), mesh_for(e, N, r),
                         accuracy);
      },
      py::arg("exponent"), py::arg("h"), py::arg("u0") = 0.0, py::arg("N") = 128,
      py::arg("r") = py::none(), py::arg("accuracy") = 1e-10,
      "Solve D^alpha(t) u = h with u(0) = u0");

  py::class_<ComposeReport>(m, "ComposeReport")
      .def_readonly("nodes", &ComposeReport::nodes)
      .def_readonly("lhs", &ComposeReport::lhs)
      .def_readonly("rhs", &ComposeReport::rhs)
      .def_readonly("max_residual", &ComposeReport::max_residual);

  m.def(
      "compose_residual",
      [](const VariableExponent& e, const std::string& g, int N, double r,
         const std::string& route) {
        return compose_residual(e, ScalarFunc::parse(g), graded_mesh(e.horizon(), N, r),
                                route_from_name(route));
      },
      py::arg("exponent"), py::arg("g"), py::arg("N") = 128, py::arg("r") = 2.0,
      py::arg("route") = "left",
      "Residual of the approximate-inversion identity at interior nodes");

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("exponent_p", &FitResult::exponent_p)
      .def_readonly("amplitude_C", &FitResult::amplitude_C)
      .def_readonly("r_squared", &FitResult::r_squared)
      .def_readonly("first_index", &FitResult::first_index)
      .def_readonly("last_index", &FitResult::last_index);

  m.def(
      "fit_singularity_exponent",
      [](const SolutionGrid& g) { return fit_singularity_exponent(g); },
      py::arg("grid"),
      "Log-log power-law fit of |u| over the default near-zero window");

  m.def("extrapolate_to_zero", &extrapolate_to_zero, py::arg("grid"),
        "Linear extrapolation of u to t = 0 from the first interior nodes");

  py::class_<ExperimentCheck>(m, "ExperimentCheck")
      .def_readonly("name", &ExperimentCheck::name)
      .def_readonly("predicted", &ExperimentCheck::predicted)
      .def_readonly("observed", &ExperimentCheck::observed)
      .def_readonly("tolerance", &ExperimentCheck::tolerance)
      .def_readonly("passed", &ExperimentCheck::pass)
      .def("__repr__", [](const ExperimentCheck& c) {
        return "ExperimentCheck(" + c.name + ", " +
               (c.pass ? "PASS" : "FAIL") + ")";
      });

  m.def(
      "verify_composition",
      [](const VariableExponent& e, const std::string& g, int N,
         double tolerance) {
        return verify_composition(e, ScalarFunc::parse(g), N, tolerance);
      },
      py::arg("exponent"), py::arg("g") = "1 + t^2", py::arg("N") = 64,
      py::arg("tolerance") = 1e-3);
  m.def("verify_singularity", &verify_singularity, py::arg("exponent"),
        py::arg("N") = 128);
  m.def("verify_initial_value", &verify_initial_value, py::arg("exponent"),
        py::arg("N") = 128, py::arg("u0") = 2.0);
}

}  // namespace fracvx
