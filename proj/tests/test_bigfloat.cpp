#include <doctest.h>

#include <cmath>

#include "expfun/bigfloat.hpp"

using namespace expfun;

TEST_CASE("bigfloat arithmetic follows the working precision") {
  ScopedPrecision guard(256);
  BigFloat third = BigFloat(1.0) / 3.0;
  CHECK(third.precision() == 256);
  BigFloat back = third * 3.0 - 1.0;
  CHECK(std::fabs(back.to_double()) < 1e-70);
  CHECK(to_double(third) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
}

TEST_CASE("bigfloat resolves cancellation that double cannot") {
  ScopedPrecision guard(200);
  BigFloat big = exp(BigFloat(50.0));
  BigFloat diff = (big + 1.0) - big;
  CHECK(diff.to_double() == 1.0);
  const double d = std::exp(50.0);
  CHECK((d + 1.0) - d != 1.0);
}

TEST_CASE("log_abs handles magnitudes far outside double range") {
  ScopedPrecision guard(128);
  BigFloat huge = exp(BigFloat(5000.0));
  CHECK(log_abs(huge) == doctest::Approx(5000.0).epsilon(1e-14));
  CHECK(std::isinf(huge.to_double()));
  CHECK(log_abs(BigFloat(0.0)) == -HUGE_VAL);
}

TEST_CASE("scoped precision restores on exit and copies keep their precision") {
  const int before = working_precision();
  BigFloat outer;
  {
    ScopedPrecision guard(512);
    BigFloat inner(2.0);
    outer = inner;
    CHECK(working_precision() == 512);
  }
  CHECK(working_precision() == before);
  CHECK(outer.precision() == 512);
  CHECK(pow(outer, 0.5).to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}
