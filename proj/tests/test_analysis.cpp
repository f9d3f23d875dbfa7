#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "fracvx/analysis.hpp"
#include "fracvx/errors.hpp"

using namespace fracvx;

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) {
    t[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  }
  return t;
}

}  // namespace

TEST_CASE("power-law fits recover exact exponents") {
  const auto t = log_spaced(1e-4, 1e-2, 40);
  for (double p : {-0.9, -0.4, 0.3, 0.9}) {
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = 2.5 * std::pow(t[i], p);
    const FitResult r = fit_singularity_exponent(t, v, 0, 39);
    CHECK(r.exponent_p == doctest::Approx(p).epsilon(1e-8));
    CHECK(r.amplitude_C == doctest::Approx(2.5).epsilon(1e-6));
    CHECK(r.r_squared == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.first_index == 0);
    CHECK(r.last_index == 39);
  }
}

TEST_CASE("fit uses magnitudes, so negative data works") {
  const auto t = log_spaced(1e-4, 1e-2, 20);
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = -3.0 * std::sqrt(t[i]);
  const FitResult r = fit_singularity_exponent(t, v, 0, 19);
  CHECK(r.exponent_p == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(r.amplitude_C == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("smooth perturbation barely moves the fitted exponent") {
  const auto t = log_spaced(1e-4, 1e-2, 60);
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    v[i] = 3.0 * std::pow(t[i], 0.7) * (1.0 + t[i]);
  }
  const FitResult r = fit_singularity_exponent(t, v, 0, 59);
  CHECK(std::fabs(r.exponent_p - 0.7) <= 0.02);
}

TEST_CASE("constant data fits a flat line") {
  const auto t = log_spaced(1e-4, 1e-2, 10);
  const std::vector<double> v(t.size(), 4.0);
  const FitResult r = fit_singularity_exponent(t, v, 0, 9);
  CHECK(std::fabs(r.exponent_p) <= 1e-8);
}

TEST_CASE("fit input validation") {
  const auto t = log_spaced(1e-3, 1e-1, 10);
  std::vector<double> v(t.size(), 1.0);

  v[4] = -1.0;
  CHECK_THROWS_AS(fit_singularity_exponent(t, v, 0, 9), DomainError);
  v[4] = 0.0;
  CHECK_THROWS_AS(fit_singularity_exponent(t, v, 0, 9), DomainError);
  v[4] = 1.0;

  CHECK_THROWS_AS(fit_singularity_exponent(t, v, 0, 2), InvalidParam);
  CHECK_THROWS_AS(fit_singularity_exponent(t, v, -1, 9), InvalidParam);
  CHECK_THROWS_AS(fit_singularity_exponent(t, v, 0, 10), InvalidParam);
  CHECK_THROWS_AS(fit_singularity_exponent(t, {1.0, 2.0}, 0, 1), InvalidParam);

  auto t0 = t;
  t0[0] = 0.0;
  CHECK_THROWS_AS(fit_singularity_exponent(t0, v, 0, 9), InvalidParam);
}

TEST_CASE("default fit window brackets [1e-4 T, 1e-2 T]") {
  const GradedMesh mesh = graded_mesh(1.0, 2048, 4.0);
  const auto [first, last] = default_fit_window(mesh);
  REQUIRE(first > 0);
  REQUIRE(last - first + 1 >= 4);
  CHECK(mesh.node(first) >= 1e-4);
  CHECK(mesh.node(first - 1) < 1e-4);
  CHECK(mesh.node(last) <= 1e-2);
  CHECK(mesh.node(last + 1) > 1e-2);

  // a coarse uniform mesh has no nodes that close to the origin
  const auto [f2, l2] = default_fit_window(graded_mesh(1.0, 8, 1.0));
  CHECK(f2 == -1);
  CHECK(l2 == -1);
}

TEST_CASE("observed orders from doubling sequences") {
  const OrderEstimate a =
      estimate_order({1e-2, 2.5e-3, 6.25e-4}, {32, 64, 128});
  REQUIRE(a.orders.size() == 2);
  CHECK(a.orders[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(a.orders[1] == doctest::Approx(2.0).epsilon(1e-12));

  const OrderEstimate b = estimate_order({1e-2, 5e-3}, {64, 128});
  REQUIRE(b.orders.size() == 1);
  CHECK(b.orders[0] == doctest::Approx(1.0).epsilon(1e-12));

  const OrderEstimate c = estimate_order({1e-3, 1e-3}, {16, 32});
  CHECK(c.orders[0] == 0.0);

  CHECK_THROWS_AS(estimate_order({1e-2, 5e-3}, {32, 63}), InvalidParam);
  CHECK_THROWS_AS(estimate_order({1e-2}, {32}), InvalidParam);
  CHECK_THROWS_AS(estimate_order({1e-2, 0.0}, {32, 64}), InvalidParam);
  CHECK_THROWS_AS(estimate_order({1e-2, -1e-3}, {32, 64}), InvalidParam);
  CHECK_THROWS_AS(estimate_order({1e-2, 5e-3, 2e-3}, {32, 64}), InvalidParam);
}

TEST_CASE("forward samples of known images") {
  const auto e = make_exponent(ScalarFunc::parse("0.5"), 1.0);
  const GradedMesh mesh = graded_mesh(1.0, 16, 2.0);

  const auto f1 = manufactured_forward(e, ScalarFunc::constant(1.0),
                                       OperatorFamily::AbelLeft, mesh);
  REQUIRE(f1.size() == mesh.t.size());
  CHECK(f1[0] == 0.0);
  for (int j = 1; j <= mesh.N; ++j) {
    CHECK(f1[j] ==
          doctest::Approx(2.0 * std::sqrt(mesh.node(j))).epsilon(1e-9));
  }

  const auto f2 = manufactured_forward(e, ScalarFunc::parse("t"),
                                       OperatorFamily::AbelLeft, mesh);
  for (int j = 1; j <= mesh.N; ++j) {
    const double t = mesh.node(j);
    CHECK(f2[j] ==
          doctest::Approx(4.0 / 3.0 * t * std::sqrt(t)).epsilon(1e-9));
  }

  const auto f3 = manufactured_forward(e, ScalarFunc::constant(1.0),
                                       OperatorFamily::RLLeft, mesh);
  const double spi = std::sqrt(std::acos(-1.0));
  for (int j = 1; j <= mesh.N; ++j) {
    CHECK(f3[j] ==
          doctest::Approx(2.0 * std::sqrt(mesh.node(j)) / spi).epsilon(1e-9));
  }

  CHECK_THROWS_AS(manufactured_forward(e, ScalarFunc::constant(1.0),
                                       OperatorFamily::RLGeneral, mesh),
                  InvalidParam);
}

TEST_CASE("manufactured first-kind data: value and derivative agree") {
  const auto e = make_exponent(ScalarFunc::parse("0.6 - 0.1*t"), 1.0);
  const RhsData d = manufactured_rhs_data(e, ScalarFunc::parse("1 + t"));
  CHECK(d.at_zero == 0.0);
  CHECK(d.value(0.8) == doctest::Approx(2.9484560408614583).epsilon(1e-10));

  for (double t : {0.3, 0.55, 0.9}) {
    const double h = 1e-4;
    const double fd = (d.value(t + h) - d.value(t - h)) / (2.0 * h);
    CHECK(std::fabs(d.deriv(t) - fd) <= 1e-4 * std::fabs(fd));
  }
  CHECK_THROWS_AS(d.deriv(0.0), InvalidParam);
}

TEST_CASE("linear extrapolation to the origin") {
  SolutionGrid g;
  g.mesh = graded_mesh(1.0, 4, 1.0);
  g.u.resize(g.mesh.t.size());
  for (std::size_t j = 0; j < g.u.size(); ++j) {
    g.u[j] = 3.0 - 2.0 * g.mesh.t[j];
  }
  g.u[0] = 99.0;  // node 0 must not participate
  CHECK(extrapolate_to_zero(g) == doctest::Approx(3.0).epsilon(1e-13));

  SolutionGrid tiny;
  tiny.mesh = graded_mesh(1.0, 1, 1.0);
  tiny.u = {0.0, 1.0};
  CHECK_THROWS_AS(extrapolate_to_zero(tiny), InvalidParam);
}

TEST_CASE("composition checks pass at a constant exponent") {
  const auto e = make_exponent(ScalarFunc::parse("0.5"), 1.0);
  const auto checks =
      verify_composition(e, ScalarFunc::parse("1 + t^2"), 32, 1e-6);
  REQUIRE(checks.size() == 2);
  CHECK(checks[0].name == "composition-residual-left-route");
  CHECK(checks[1].name == "composition-residual-right-route");
  for (const auto& c : checks) {
    CHECK(c.pass);
    CHECK(c.observed <= c.tolerance);
  }
}

TEST_CASE("check serialization") {
  std::vector<ExperimentCheck> checks(2);
  checks[0].name = "alpha";
  checks[0].predicted = -0.4;
  checks[0].observed = -0.395;
  checks[0].tolerance = 0.05;
  checks[0].pass = true;
  checks[1].name = "beta";
  checks[1].pass = false;

  std::ostringstream csv;
  write_checks_csv(checks, csv);
  const std::string text = csv.str();
  CHECK(text.rfind("name,predicted,observed,tolerance,pass\n", 0) == 0);
  CHECK(text.find("alpha,") != std::string::npos);
  CHECK(text.find(",1\n") != std::string::npos);
  CHECK(text.find(",0\n") != std::string::npos);
  CHECK(text.find('\r') == std::string::npos);

  std::ostringstream summary;
  write_checks_summary(checks, summary);
  CHECK(summary.str().find("PASS") != std::string::npos);
  CHECK(summary.str().find("FAIL") != std::string::npos);
}
