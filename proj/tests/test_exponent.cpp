#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracvx/errors.hpp"
#include "fracvx/exponent.hpp"

using namespace fracvx;

TEST_CASE("interior exponent classification and bounds") {
  const auto e = make_exponent(ScalarFunc::parse("0.6 - 0.1*t"), 1.0);
  CHECK(e.regime() == ExponentRegime::InteriorRange);
  CHECK(e.horizon() == 1.0);
  CHECK(e.at_zero() == doctest::Approx(0.6));
  CHECK(e(0.5) == doctest::Approx(0.55));
  CHECK(e.lower_bound() == doctest::Approx(0.5));
  CHECK(e.upper_bound() == doctest::Approx(0.6));
  CHECK(e.jet(0.25).d1 == doctest::Approx(-0.1));
}

TEST_CASE("touching regime: alpha(0) = 1") {
  const auto e = make_exponent(ScalarFunc::parse("1 - t^2/2"), 1.0);
  CHECK(e.regime() == ExponentRegime::TouchesOneAtZero);
  CHECK(e.at_zero() == 1.0);
  CHECK(e(1.0) == doctest::Approx(0.5));

  const auto f = make_exponent(ScalarFunc::parse("1 - t/2"), 1.0);
  CHECK(f.regime() == ExponentRegime::TouchesOneAtZero);
}

TEST_CASE("range violations are rejected") {
  CHECK_THROWS_AS(make_exponent(ScalarFunc::parse("1.2 - t"), 1.0),
                  RangeViolation);
  CHECK_THROWS_AS(make_exponent(ScalarFunc::parse("t"), 1.0),
                  RangeViolation);  // touches 1 at T, 0 at 0
  CHECK_THROWS_AS(make_exponent(ScalarFunc::parse("0.5 - t"), 1.0),
                  RangeViolation);
  CHECK_THROWS_AS(make_exponent(ScalarFunc::parse("1 + 0*t"), 1.0),
                  RangeViolation);  // constant 1 is not admissible
}

TEST_CASE("non-smooth exponents are rejected") {
  // sqrt has an unbounded derivative at 0: the jet is non-finite there.
  CHECK_THROWS_AS(make_exponent(ScalarFunc::parse("0.5 + sqrt(t)/10"), 1.0),
                  NotSmooth);
}

TEST_CASE("bad horizon") {
  CHECK_THROWS_AS(make_exponent(ScalarFunc::parse("0.5"), 0.0), InvalidParam);
  CHECK_THROWS_AS(make_exponent(ScalarFunc::parse("0.5"), -1.0),
                  InvalidParam);
}

TEST_CASE("complement flips the exponent") {
  const auto e = make_exponent(ScalarFunc::parse("0.6 - 0.1*t"), 2.0);
  const auto c = e.complement();
  CHECK(c.horizon() == 2.0);
  for (double t : {0.0, 0.7, 2.0}) {
    CHECK(c(t) == doctest::Approx(1.0 - e(t)).epsilon(1e-15));
    CHECK(c.jet(t).d1 == doctest::Approx(-e.jet(t).d1).epsilon(1e-15));
  }
  CHECK(c.complement()(1.3) == doctest::Approx(e(1.3)).epsilon(1e-15));
}

TEST_CASE("power term is continuous onto the diagonal") {
  const auto e = make_exponent(ScalarFunc::parse("0.5 + 0.2*t"), 1.0);
  CHECK(e.power_term(0.4, 0.4) == 1.0);
  CHECK(e.power_term(0.4, 0.4 + 1e-13) == doctest::Approx(1.0).epsilon(1e-9));
  const double v = e.power_term(0.2, 0.9);
  CHECK(v == doctest::Approx(std::pow(0.7, e(0.9) - e(0.2))).epsilon(1e-14));
  CHECK_THROWS_AS(e.power_term(0.9, 0.2), InvalidParam);
}
