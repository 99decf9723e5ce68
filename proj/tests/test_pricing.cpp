#include <doctest.h>

#include <cmath>

#include "expfun/brownian_oracle.hpp"
#include "expfun/pricing.hpp"
#include "support.hpp"

using namespace expfun;

TEST_CASE("calibrate_drift solves psi(1) = r") {
  const LevyModel b = calibrate_drift(BrownianDrift{0.0, 4.0}, 1.0);
  CHECK(b.drift() == doctest::Approx(-1.0).epsilon(1e-15));
  const LevyModel j = calibrate_drift(JumpDiffusion{0.0, 2.0, 3.0, 2.0}, 1.0);
  CHECK(j.drift() == doctest::Approx(1.0).epsilon(1e-15));
  const LevyModel s = calibrate_drift(StableDrift{0.0, 1.0, 1.5}, 2.0);
  CHECK(s.drift() == doctest::Approx(1.0).epsilon(1e-15));
  for (const LevyModel& m : {b, j}) CHECK(std::fabs(psi(m, 1.0) - 1.0) < 1e-12);
  CHECK(std::fabs(psi(s, 1.0) - 2.0) < 1e-12);
  CHECK(error_code_of([] { calibrate_drift(BrownianDrift{0.0, 4.0}, 0.0); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("zero_strike_value") {
  const LevyModel m(BrownianDrift{0.0, 4.0});  // psi(1) = 2
  CHECK(zero_strike_value(m, 8.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  const LevyModel r1 = calibrate_drift(BrownianDrift{0.0, 4.0}, 1.0);
  CHECK(zero_strike_value(r1, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(error_code_of([&] { zero_strike_value(m, 2.0); }) == ErrorCode::LaplaceParameterTooSmall);
  CHECK(error_code_of([&] { zero_strike_value(m, 1.0); }) == ErrorCode::LaplaceParameterTooSmall);
}

TEST_CASE("Brownian price through the Kummer function") {
  // psi(u) = 2u^2, q = 8: phi = 2, kappa = 1, varrho = 4, C = Gamma(3)/(4 Gamma(5)) = 1/48.
  const LevyModel m(BrownianDrift{0.0, 4.0});
  const BrownianCase c = brownian_case(0.0, 8.0);
  CHECK(closed_C(c) == doctest::Approx(1.0 / 48.0).epsilon(1e-14));
  for (double K : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const AsianQuote a = asian_price(m, 8.0, K, 0.0, 1e-12);
    const double expected = closed_C(c) / K * kummer_phi(1.0, 5.0, -1.0 / (2.0 * K));
    CHECK(rel_diff(a.price, expected) < 1e-9);
    CHECK(a.phi_q == doctest::Approx(2.0).epsilon(1e-13));
  }
}

TEST_CASE("small strikes approach the zero-strike value") {
  for (const LevyModel& m : {calibrate_drift(BrownianDrift{0.0, 4.0}, 1.0), calibrate_drift(JumpDiffusion{0.0, 2.0, 3.0, 2.0}, 1.0)}) {
    const double z0 = zero_strike_value(m, 8.0);
    const AsianQuote a = asian_price(m, 8.0, 1e-3, 0.0, 1e-10);
    CHECK(rel_diff(a.price, z0) < 1e-2);
    // E[(Sigma-K)^+] = E[Sigma] - K + E[(K-Sigma)^+] and the last term is O(q K^2).
    CHECK(std::fabs(a.price - (z0 - 1e-3)) < 8.0 * 1e-6);
  }
}

TEST_CASE("translation identity") {
  const LevyModel m = calibrate_drift(JumpDiffusion{0.0, 2.0, 3.0, 2.0}, 1.0);
  for (double y : {-1.0, 0.5}) {
    for (double K : {0.5, 1.0}) {
      const AsianQuote a = asian_price(m, 8.0, K, y, 1e-10);
      const AsianQuote b = asian_price(m, 8.0, K * std::exp(-y), 0.0, 1e-10);
      CHECK(rel_diff(a.price, std::exp(y) * b.price) < 1e-14);
      CHECK(a.y == y);
    }
  }
}

TEST_CASE("monotone, convex and bounded in the strike") {
  for (const LevyModel& m : {calibrate_drift(BrownianDrift{0.0, 4.0}, 1.0), calibrate_drift(JumpDiffusion{0.0, 2.0, 3.0, 2.0}, 1.0),
                             calibrate_drift(StableDrift{0.0, 1.0, 1.5}, 1.0)}) {
    const double z0 = zero_strike_value(m, 8.0);
    std::vector<AsianQuote> quotes;
    for (int i = 0; i <= 20; ++i) quotes.push_back(asian_price(m, 8.0, 0.05 + 0.1 * i, 0.0, 1e-10));
    for (std::size_t i = 0; i < quotes.size(); ++i) {
      const AsianQuote& a = quotes[i];
      CHECK(a.price <= z0 + a.error_bound);
      CHECK(a.price >= std::max(z0 - a.K, 0.0) - a.error_bound);
      if (i > 0) CHECK(a.price <= quotes[i - 1].price);
      if (i > 0 && i + 1 < quotes.size()) {
        const double second = quotes[i - 1].price - 2 * a.price + quotes[i + 1].price;
        CHECK(second >= -(quotes[i - 1].error_bound + 2 * a.error_bound + quotes[i + 1].error_bound));
      }
    }
  }
}

TEST_CASE("near the pole phi(q) = 1 the error bound is inflated") {
  const LevyModel m = calibrate_drift(BrownianDrift{0.0, 4.0}, 1.0);  // psi(u) = 2u^2 - u
  const double eps = 2e-5;
  const double q = psi(m, 1.0 + eps);
  const AsianQuote a = asian_price(m, q, 1.0, 0.0, 1e-10);
  CHECK(a.phi_q - 1.0 < 1e-4);
  CHECK(a.error_bound / a.price > 1e-16 / (a.phi_q - 1.0));
  CHECK(a.price <= zero_strike_value(m, q) + a.error_bound);
}

TEST_CASE("pricing preconditions") {
  const LevyModel m(BrownianDrift{0.0, 4.0});
  CHECK(error_code_of([&] { asian_price(m, 2.0, 1.0, 0.0, 1e-10); }) == ErrorCode::LaplaceParameterTooSmall);
  CHECK(error_code_of([&] { asian_price(m, 8.0, 0.0, 0.0, 1e-10); }) == ErrorCode::DomainError);
  CHECK(error_code_of([&] { asian_price(m, 8.0, -1.0, 0.0, 1e-10); }) == ErrorCode::DomainError);
}
