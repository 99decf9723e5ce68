#include <doctest.h>

#include <cmath>
#include <vector>

#include "expfun/acceleration.hpp"

using namespace expfun;

TEST_CASE("richardson is exact on polynomials in h") {
  std::vector<double> h, v;
  for (int j = 0; j < 6; ++j) {
    const double x = 1.0 / (8.0 * std::ldexp(1.0, j));
    h.push_back(x);
    v.push_back(0.25 + 3.0 * x - 7.0 * x * x + 2.0 * x * x * x);
  }
  const auto r = richardson<double>(h, v);
  CHECK(r.value == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r.error < 1e-12);
}

TEST_CASE("richardson on an analytic function of h") {
  std::vector<double> h, v;
  for (int j = 0; j < 10; ++j) {
    const double x = 1.0 / (8.0 * std::ldexp(1.0, j));
    h.push_back(x);
    v.push_back(1.0 / (1.0 + x) + std::sin(x));
  }
  const auto r = richardson<double>(h, v);
  CHECK(std::fabs(r.value - 1.0) < 1e-13);
  CHECK(std::fabs(r.value - 1.0) <= 10 * r.error + 1e-15);
}

TEST_CASE("iterated aitken on alternating and geometric sequences") {
  std::vector<double> partial;
  double s = 0.0;
  for (int n = 1; n <= 13; ++n) {
    s += (n % 2 ? 1.0 : -1.0) / n;
    partial.push_back(s);
  }
  const auto a = iterated_aitken<double>(partial);
  CHECK(std::fabs(a.value - std::log(2.0)) < 1e-9);
  CHECK(std::fabs(a.value - std::log(2.0)) <= 10 * a.error);

  std::vector<double> geo;
  for (int n = 0; n < 5; ++n) geo.push_back(3.0 + std::pow(0.5, n));
  CHECK(iterated_aitken<double>(geo).value == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("degenerate inputs") {
  std::vector<double> one{2.0};
  CHECK(richardson<double>(one, one).value == 2.0);
  CHECK(std::isinf(richardson<double>(one, one).error));
  CHECK(std::isinf(iterated_aitken<double>(one).error));
  std::vector<double> flat{1.0, 1.0, 1.0, 1.0};
  CHECK(iterated_aitken<double>(flat).value == 1.0);
}
