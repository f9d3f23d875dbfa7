#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracvx/errors.hpp"
#include "fracvx/expr.hpp"

using namespace fracvx;

TEST_CASE("arithmetic and precedence") {
  CHECK(ScalarFunc::parse("1 + 2*3")(0.0) == 7.0);
  CHECK(ScalarFunc::parse("(1 + 2)*3")(0.0) == 9.0);
  CHECK(ScalarFunc::parse("2^3^2")(0.0) == 512.0);  // right associative
  CHECK(ScalarFunc::parse("-2^2")(0.0) == -4.0);
  CHECK(ScalarFunc::parse("6/4/2")(0.0) == 0.75);
  CHECK(ScalarFunc::parse("t - t - t")(2.0) == -2.0);
}

TEST_CASE("functions") {
  const double t = 0.371;
  CHECK(ScalarFunc::parse("sin(t)")(t) == std::sin(t));
  CHECK(ScalarFunc::parse("cos(t)")(t) == std::cos(t));
  CHECK(ScalarFunc::parse("exp(t)")(t) == std::exp(t));
  CHECK(ScalarFunc::parse("ln(t)")(t) == std::log(t));
  CHECK(ScalarFunc::parse("sqrt(t)")(t) == std::sqrt(t));
  CHECK(ScalarFunc::parse("pow(t, 3)")(t) == doctest::Approx(t * t * t));
}

TEST_CASE("jet derivatives: value pinned against closed forms") {
  // exp(t) sin(t) at t = 0.7; second derivative is 2 exp(t) cos(t).
  const Jet2 j = ScalarFunc::parse("exp(t) * sin(t)").jet(0.7);
  CHECK(j.v == doctest::Approx(1.2972951118752690).epsilon(1e-15));
  CHECK(j.d1 == doctest::Approx(2.8374981373070488).epsilon(1e-15));
  CHECK(j.d2 == doctest::Approx(3.0804060508635597).epsilon(1e-14));

  const Jet2 p = ScalarFunc::parse("t^2.5").jet(1.3);
  CHECK(p.v == doctest::Approx(std::pow(1.3, 2.5)).epsilon(1e-14));
  CHECK(p.d1 == doctest::Approx(2.5 * std::pow(1.3, 1.5)).epsilon(1e-14));
  CHECK(p.d2 ==
        doctest::Approx(2.5 * 1.5 * std::pow(1.3, 0.5)).epsilon(1e-14));
}

TEST_CASE("jet derivatives agree with finite differences") {
  const char* exprs[] = {"sin(2*t) + t^3",      "exp(-t) * (1 + t^2)",
                         "ln(1 + t) / (2 - t)", "sqrt(1 + t*t)",
                         "pow(2, t)",           "cos(t)^2 - sin(t)^2"};
  for (const char* s : exprs) {
    const ScalarFunc f = ScalarFunc::parse(s);
    for (double t : {0.3, 0.9, 1.4}) {
      const Jet2 j = f.jet(t);
      const double h = 1e-5;
      const double d1 = (f(t + h) - f(t - h)) / (2.0 * h);
      const double d2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
      CHECK(std::fabs(j.d1 - d1) <= 1e-8 * std::max(1.0, std::fabs(d1)));
      CHECK(std::fabs(j.d2 - d2) <= 1e-4 * std::max(1.0, std::fabs(d2)));
    }
  }
}

TEST_CASE("integer powers of negative bases work; fractional ones do not") {
  CHECK(ScalarFunc::parse("(-2)^3")(0.0) == -8.0);
  CHECK(ScalarFunc::parse("(t - 2)^2")(1.0) == 1.0);
  const ScalarFunc bad = ScalarFunc::parse("(t - 2)^0.5");
  CHECK_THROWS_AS(bad(1.0), DomainError);
  CHECK_THROWS_AS(ScalarFunc::parse("ln(t)")(0.0), DomainError);
}

TEST_CASE("fractional powers of zero evaluate to zero") {
  CHECK(ScalarFunc::parse("t^1.5")(0.0) == 0.0);
  CHECK(ScalarFunc::parse("t^0.5")(0.0) == 0.0);
  CHECK(ScalarFunc::parse("pow(t, 1.5)")(0.0) == 0.0);
  CHECK(ScalarFunc::parse("t^1.5")(0.25) == doctest::Approx(0.125));
  // zero base with a nonpositive exponent stays an error
  CHECK_THROWS_AS(ScalarFunc::parse("pow(t, -1.5)")(0.0), DomainError);
  // the derivative at zero is genuinely singular; the jet stays strict
  CHECK_THROWS_AS(ScalarFunc::parse("t^0.5").jet(0.0), DomainError);
}

TEST_CASE("parse errors carry the byte position") {
  try {
    ScalarFunc::parse("1 + * 2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
  CHECK_THROWS_AS(ScalarFunc::parse(""), ParseError);
  CHECK_THROWS_AS(ScalarFunc::parse("foo(t)"), ParseError);
  CHECK_THROWS_AS(ScalarFunc::parse("1 + (2"), ParseError);
  CHECK_THROWS_AS(ScalarFunc::parse("1 2"), ParseError);
  CHECK_THROWS_AS(ScalarFunc::parse("sin()"), ParseError);
  CHECK_THROWS_AS(ScalarFunc::parse("pow(t)"), ParseError);
}

TEST_CASE("printed form round-trips") {
  const char* exprs[] = {"1 + 2*t - t^2", "sin(t)*exp(-t)", "pow(t, 1.5)/3",
                         "-(t + 1)"};
  for (const char* s : exprs) {
    const ScalarFunc f = ScalarFunc::parse(s);
    const ScalarFunc g = ScalarFunc::parse(f.printed());
    for (double t : {0.1, 0.7, 2.3}) CHECK(f(t) == g(t));
    CHECK(f.source() == s);
  }
}

TEST_CASE("constant folding changes nothing observable") {
  ParseOptions no_fold;
  no_fold.fold_constants = false;
  const char* exprs[] = {"(2 + 3)*t", "exp(1) + t", "2^10 * t - 7/2"};
  for (const char* s : exprs) {
    const ScalarFunc a = ScalarFunc::parse(s);
    const ScalarFunc b = ScalarFunc::parse(s, no_fold);
    for (double t : {0.0, 0.4, 1.9}) {
      CHECK(a(t) == b(t));
      const Jet2 ja = a.jet(t), jb = b.jet(t);
      CHECK(ja.v == jb.v);
      CHECK(ja.d1 == jb.d1);
      CHECK(ja.d2 == jb.d2);
    }
  }
}

TEST_CASE("constant helper") {
  const ScalarFunc c = ScalarFunc::constant(3.25);
  CHECK(c(0.0) == 3.25);
  CHECK(c(100.0) == 3.25);
  CHECK(c.jet(1.0).d1 == 0.0);
}

TEST_CASE("evaluation is deterministic") {
  const ScalarFunc f = ScalarFunc::parse("sin(3*t) * exp(t/7) - ln(1+t)");
  const double a = f(0.8315);
  for (int i = 0; i < 10; ++i) CHECK(f(0.8315) == a);
}
