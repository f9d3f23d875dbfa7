#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracvx/errors.hpp"
#include "fracvx/kernels.hpp"
#include "fracvx/specialfn.hpp"

using namespace fracvx;

namespace {

std::pair<double, double> random_pair(std::mt19937& rng, double T) {
  std::uniform_real_distribution<double> dist(0.0, T);
  double a = dist(rng), b = dist(rng);
  if (a > b) std::swap(a, b);
  // keep a workable separation and stay away from the endpoints
  b = std::min(b, T - 1e-3);
  if (b - a < 1e-3) {
    a = std::max(0.0, b - 1e-3);
  }
  return {a, b};
}

}  // namespace

TEST_CASE("pinned kernel values") {
  const auto e51 = make_exponent(ScalarFunc::parse("0.5 + 0.1*t"), 1.0);
  const auto eq = make_exponent(ScalarFunc::parse("1 - t^2/2"), 1.0);

  const KernelEval k = kernel_K(e51, 0.2, 0.6);
  CHECK(k.value == doctest::Approx(-0.31701909121178702).epsilon(1e-13));
  CHECK(k.method == KernelMethod::Analytic);

  const KernelEval kd = kernel_K_diagonal(e51, 0.4);
  CHECK(kd.value == doctest::Approx(-0.063775346998003).epsilon(1e-11));
  CHECK(kd.log_singular_part ==
        doctest::Approx(0.31665619402952277).epsilon(1e-13));

  CHECK(kernel_RL(eq, 0.1, 0.4).value ==
        doctest::Approx(-0.053768543252590473).epsilon(1e-13));

  CHECK(kernel_L(e51, 0.2, 0.6).value ==
        doctest::Approx(-0.238395381282844).epsilon(1e-10));
  CHECK(kernel_L(e51, 0.2, 0.6).log_singular_part == 0.0);

  CHECK(kernel_L_diagonal(e51, 0.4).value ==
        doctest::Approx(-0.25884658245845564).epsilon(1e-13));

  const auto a2 = [](double c1) {
    TwoVarExponent v;
    v.value = [c1](double t, double s) { return 0.5 + c1 * t * s; };
    v.d1 = [c1](double, double s) { return c1 * s; };
    v.d2 = [c1](double t, double) { return c1 * t; };
    return v;
  };
  CHECK(kernel_M_dt(a2(0.1), 0.2, 0.7).value ==
        doctest::Approx(0.036802874069357).epsilon(1e-9));
}

TEST_CASE("constant exponents annihilate every kernel") {
  std::mt19937 rng(314159);
  for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto e = make_exponent(ScalarFunc::constant(a), 1.0);
    TwoVarExponent a2;
    a2.value = [a](double, double) { return a; };
    a2.d1 = [](double, double) { return 0.0; };
    a2.d2 = [](double, double) { return 0.0; };
    for (int i = 0; i < 200; ++i) {
      const auto [s, t] = random_pair(rng, 1.0);
      CHECK(std::fabs(kernel_K(e, s, t).value) <= 1e-10);
      CHECK(std::fabs(kernel_L(e, s, t).value) <= 1e-10);
      CHECK(std::fabs(kernel_RL(e, s, t).value) <= 1e-10);
      CHECK(std::fabs(kernel_M_dt(a2, s, t).value) <= 1e-10);
    }
    CHECK(std::fabs(kernel_K_diagonal(e, 0.5).value) <= 1e-12);
    CHECK(std::fabs(kernel_L_diagonal(e, 0.5).value) <= 1e-12);
    CHECK(std::fabs(kernel_RL_diagonal(e, 0.5).value) <= 1e-12);
  }
}

TEST_CASE("analytic kernels agree with the finite-difference route") {
  const auto e = make_exponent(ScalarFunc::parse("0.5 + 0.2*sin(t)"), 1.0);
  std::mt19937 rng(271828);
  for (int i = 0; i < 1000; ++i) {
    const auto [s, t] = random_pair(rng, 1.0);
    {
      const double a = kernel_K(e, s, t).value;
      const KernelEval fd = kernel_K_fd(e, s, t);
      CHECK(fd.method == KernelMethod::FiniteDifference);
      CHECK(std::fabs(a - fd.value) <= 1e-5 * std::max(1.0, std::fabs(a)));
    }
    {
      const double a = kernel_RL(e, s, t).value;
      const double fd = kernel_RL_fd(e, s, t).value;
      CHECK(std::fabs(a - fd) <= 1e-5 * std::max(1.0, std::fabs(a)));
    }
  }
}

TEST_CASE("two-variable kernel matches a finite difference of its integral") {
  // M(y, t) is the z-integral of (t-y)^(A-B) (1-z)^(-B) z^(A-1) /
  // (Gamma(1-B) Gamma(A)); kernel_M_dt must match its t-derivative.
  TwoVarExponent a2;
  a2.value = [](double t, double s) { return 0.5 + 0.1 * t * s; };
  a2.d1 = [](double, double s) { return 0.1 * s; };
  a2.d2 = [](double t, double) { return 0.1 * t; };
  auto M = [&](double y, double t) {
    return tanh_sinh(
        [&](double, double from0, double from1) {
          const double u = (t - y) * from0 + y;
          const double A = a2.value(u, y);
          const double B = a2.value(u, t);
          return std::exp((A - B) * std::log(t - y) -
                          B * std::log(from1) +
                          (A - 1.0) * std::log(from0)) /
                 (gamma_fn(1.0 - B) * gamma_fn(A));
        },
        0.0, 1.0, 1e-12);
  };
  // frozen reference for the integral itself
  CHECK(M(0.2, 0.7) == doctest::Approx(1.0260716795520751).epsilon(1e-11));
  for (auto [y, t] : {std::pair{0.2, 0.7}, {0.05, 0.3}, {0.5, 0.95}}) {
    const double h = 1e-5;
    const double fd1 = (M(y, t + h) - M(y, t - h)) / (2.0 * h);
    const double fd2 = (M(y, t + 0.5 * h) - M(y, t - 0.5 * h)) / h;
    const double fd = (4.0 * fd2 - fd1) / 3.0;
    CHECK(kernel_M_dt(a2, y, t).value ==
          doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("second-slot-only exponents reduce to the complementary kernel") {
  const auto e = make_exponent(ScalarFunc::parse("0.5 + 0.1*t"), 1.0);
  TwoVarExponent a2;
  a2.value = [](double, double s) { return 0.5 + 0.1 * s; };
  a2.d1 = [](double, double) { return 0.0; };
  a2.d2 = [](double, double) { return 0.1; };
  const auto c = e.complement();
  for (auto [y, t] : {std::pair{0.2, 0.6}, {0.1, 0.9}, {0.45, 0.5}}) {
    CHECK(kernel_M_dt(a2, y, t).value ==
          doctest::Approx(kernel_RL(c, y, t).value).epsilon(1e-6));
  }
}

TEST_CASE("log-singularity envelope near the diagonal") {
  // |K|, |kernel_RL| <= C (1 + |ln(t-s)|) with one constant fitted over a
  // sweep that approaches the diagonal down to separations of 1e-8.
  const auto e = make_exponent(ScalarFunc::parse("0.6 - 0.1*t"), 1.0);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> td(0.2, 0.9);
  std::uniform_real_distribution<double> le(-8.0, -0.7);
  double fit_K = 0.0, fit_RL = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double t = td(rng);
    const double d = std::pow(10.0, le(rng));
    const double s = t - d;
    const double env = 1.0 + std::fabs(std::log(d));
    const double K = kernel_K(e, s, t).value;
    const double RL = kernel_RL(e, s, t).value;
    CHECK(std::isfinite(K));
    CHECK(std::isfinite(RL));
    fit_K = std::max(fit_K, std::fabs(K) / env);
    fit_RL = std::max(fit_RL, std::fabs(RL) / env);
  }
  CHECK(fit_K < 10.0);
  CHECK(fit_RL < 10.0);
}

TEST_CASE("bounded kernel stays bounded near the diagonal") {
  const auto e = make_exponent(ScalarFunc::parse("0.5 + 0.2*t"), 1.0);
  double worst = 0.0;
  for (double d : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const double v = kernel_L(e, 0.5 - d, 0.5).value;
    CHECK(std::isfinite(v));
    worst = std::max(worst, std::fabs(v));
  }
  CHECK(worst < 10.0);
  // and the diagonal limit is its continuous extension
  CHECK(kernel_L(e, 0.5 - 1e-8, 0.5).value ==
        doctest::Approx(kernel_L_diagonal(e, 0.5).value).epsilon(1e-5));
}

TEST_CASE("kernel_K near-diagonal limit matches the diagonal closed form") {
  const auto e = make_exponent(ScalarFunc::parse("0.5 + 0.1*t"), 1.0);
  const double t = 0.4, d = 1e-9;
  const KernelEval diag = kernel_K_diagonal(e, t);
  const KernelEval near = kernel_K(e, t - d, t);
  // subtract the log part; the smooth parts must agree in the limit
  const double smooth = near.value - near.log_singular_part * std::log(d);
  CHECK(smooth == doctest::Approx(diag.value).epsilon(1e-6));
  CHECK(near.log_singular_part ==
        doctest::Approx(diag.log_singular_part).epsilon(1e-6));
}

TEST_CASE("gamma weight is the reflection product") {
  const auto e = make_exponent(ScalarFunc::parse("0.6 - 0.1*t"), 1.0);
  for (double t : {0.0, 0.33, 1.0}) {
    const double a = e(t);
    CHECK(gamma_weight(e, t) * std::sin(M_PI * a) / M_PI ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma_weight(e, t) ==
          doctest::Approx(gamma_fn(a) * gamma_fn(1.0 - a)).epsilon(1e-12));
  }
  const auto touching = make_exponent(ScalarFunc::parse("1 - t/2"), 1.0);
  CHECK_THROWS_AS(gamma_weight(touching, 0.0), DomainError);
  CHECK(gamma_weight(touching, 0.5) > 0.0);
}

TEST_CASE("diagonal evaluation is rejected for off-diagonal kernels") {
  const auto e = make_exponent(ScalarFunc::parse("0.5 + 0.1*t"), 1.0);
  CHECK_THROWS_AS(kernel_K(e, 0.4, 0.4), InvalidParam);
  CHECK_THROWS_AS(kernel_L(e, 0.4, 0.4), InvalidParam);
  CHECK_THROWS_AS(kernel_RL(e, 0.5, 0.4), InvalidParam);
  CHECK_THROWS_AS(kernel_L(e, 0.2, 0.6, 2), InvalidParam);  // n_z too small
  const auto touching = make_exponent(ScalarFunc::parse("1 - t/2"), 1.0);
  CHECK_THROWS_AS(kernel_K(touching, 0.2, 0.6), InvalidParam);
  // kernel_RL accepts the touching regime
  CHECK(std::isfinite(kernel_RL(touching, 0.2, 0.6).value));
}
