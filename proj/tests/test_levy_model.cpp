#include <doctest.h>

#include <cmath>
#include <vector>

#include "expfun/levy_model.hpp"
#include "support.hpp"

using namespace expfun;

TEST_CASE("build_model validates ranges and the unbounded-variation condition") {
  CHECK_NOTHROW(build_model(BrownianDrift{0.0, 4.0}));
  CHECK(error_code_of([] { build_model(BrownianDrift{1.0, 0.0}); }) == ErrorCode::UnboundedVariationViolated);
  CHECK(error_code_of([] { build_model(BrownianDrift{1.0, -1.0}); }) == ErrorCode::InvalidParameter);
  CHECK(error_code_of([] { build_model(JumpDiffusion{1.0, 0.0, 3.0, 2.0}); }) ==
        ErrorCode::UnboundedVariationViolated);
  CHECK(error_code_of([] { build_model(JumpDiffusion{1.0, 2.0, 0.0, 2.0}); }) == ErrorCode::InvalidParameter);
  CHECK(error_code_of([] { build_model(JumpDiffusion{1.0, 2.0, 3.0, -2.0}); }) == ErrorCode::InvalidParameter);
  CHECK(error_code_of([] { build_model(StableDrift{0.0, 1.0, 1.0}); }) == ErrorCode::UnboundedVariationViolated);
  CHECK(error_code_of([] { build_model(StableDrift{0.0, 1.0, 2.5}); }) == ErrorCode::InvalidParameter);
  CHECK(error_code_of([] { build_model(StableDrift{0.0, 0.0, 1.5}); }) == ErrorCode::InvalidParameter);
  CHECK(error_code_of([] { build_model(BrownianDrift{std::nan(""), 1.0}); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("psi closed forms") {
  // Two-scaled Brownian motion with drift 2 b0: psi(u) = 2u^2 + 2 b0 u.
  const double b0 = 0.7;
  LevyModel brown(BrownianDrift{2.0 * b0, 4.0});
  for (double u : {0.0, 0.5, 1.0, 3.0}) CHECK(psi(brown, u) == doctest::Approx(2 * u * u + 2 * b0 * u));

  LevyModel jd(JumpDiffusion{1.0, 2.0, 3.0, 2.0});
  CHECK(psi(jd, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

  LevyModel st(StableDrift{0.0, 1.0, 1.5});
  CHECK(psi(st, 4.0) == doctest::Approx(8.0).epsilon(1e-15));

  for (const auto& m : standard_models()) CHECK(psi(m, 0.0) == 0.0);
  CHECK(error_code_of([&] { psi(brown, -1.0); }) == ErrorCode::DomainError);
  CHECK(error_code_of([&] { psi_derivative(brown, -1.0); }) == ErrorCode::DomainError);
}

TEST_CASE("psi derivative and mean of xi_1") {
  LevyModel brown(BrownianDrift{-2.0, 4.0});
  CHECK(psi_derivative(brown, 0.5) == doctest::Approx(-2.0 + 4.0 * 0.5));
  CHECK(mean_xi1(brown) == -2.0);

  LevyModel jd(JumpDiffusion{1.0, 2.0, 4.0, 2.0});
  CHECK(psi_derivative(jd, 0.0) == doctest::Approx(1.0 - 4.0 / 2.0));
  CHECK(mean_xi1(jd) == doctest::Approx(-1.0));

  LevyModel quad(StableDrift{-1.0, 1.0, 2.0});
  CHECK(psi_derivative(quad, 1.0) == doctest::Approx(1.0));
  CHECK(mean_xi1(LevyModel(StableDrift{0.0, 1.0, 1.5})) == 0.0);
}

TEST_CASE("theta") {
  CHECK(theta(LevyModel(BrownianDrift{-2.0, 4.0})) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(theta(LevyModel(StableDrift{-1.0, 1.0, 2.0})) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(error_code_of([] { theta(LevyModel(BrownianDrift{2.0, 4.0})); }) == ErrorCode::NoPositiveRoot);

  LevyModel jd(JumpDiffusion{1.0, 2.0, 4.0, 2.0});
  const double th = theta(jd);
  CHECK(th > 0.0);
  CHECK(std::fabs(psi(jd, th)) < 1e-13);
  CHECK(psi_derivative(jd, th) > 0.0);

  LevyModel st(StableDrift{-1.0, 1.0, 1.5});
  CHECK(theta(st) == doctest::Approx(1.0).epsilon(1e-13));  // u^1.5 = u at u = 1
}

TEST_CASE("phi") {
  const double b0 = 0.3;
  LevyModel brown(BrownianDrift{2.0 * b0, 4.0});
  for (double q : {0.5, 2.0, 8.0}) {
    CHECK(2.0 * phi(brown, q) == doctest::Approx(std::sqrt(2.0 * q + b0 * b0) - b0).epsilon(1e-13));
  }
  CHECK(phi(LevyModel(BrownianDrift{0.0, 2.0}), 4.0) == doctest::Approx(2.0).epsilon(1e-13));
  LevyModel neg(BrownianDrift{-2.0, 4.0});
  CHECK(phi(neg, 0.0) == theta(neg));
  CHECK(phi(brown, 0.0) == 0.0);
  CHECK(error_code_of([&] { phi(brown, -1.0); }) == ErrorCode::DomainError);
}

TEST_CASE("shift") {
  ShiftedExponent s = shift(LevyModel(BrownianDrift{0.0, 4.0}), 2.0);
  CHECK(s.kind() == ShiftKind::PhiOfQ);
  CHECK(s.gamma() == doctest::Approx(1.0).epsilon(1e-13));
  for (double u : {0.0, 1.0, 2.5}) CHECK(s(u) == doctest::Approx(2 * u * u + 4 * u).epsilon(1e-12));

  ShiftedExponent t = shift(LevyModel(BrownianDrift{-2.0, 4.0}), 0.0);
  CHECK(t.kind() == ShiftKind::Theta);
  CHECK(t.gamma() == doctest::Approx(1.0).epsilon(1e-13));
  for (double u : {0.0, 1.0, 2.5}) CHECK(t(u) == doctest::Approx(2 * u * u + 2 * u).epsilon(1e-12));

  CHECK(error_code_of([] { shift(LevyModel(StableDrift{0.0, 1.0, 1.5}), 0.0); }) == ErrorCode::ConditionHViolated);
}

TEST_CASE("shifted gamma is re-solved at extended precision") {
  ShiftedExponent s = shift(LevyModel(JumpDiffusion{1.0, 2.0, 3.0, 2.0}), 2.0);
  ScopedPrecision guard(300);
  auto ev = s.evaluator<BigFloat>();
  BigFloat residual = s.base().eval(ev.gamma) - 2.0;
  CHECK(log_abs(residual) < -280 * 0.693);
  CHECK(ev.gamma.to_double() == doctest::Approx(s.gamma()).epsilon(1e-15));
}

TEST_CASE("property: psi is convex on a log grid") {
  for (const auto& m : standard_models()) {
    for (double u : log_grid(0.1, 100.0, 40)) {
      const double h = 1e-3 * u;
      const double d2 = psi(m, u + h) - 2.0 * psi(m, u) + psi(m, u - h);
      CHECK(d2 >= -1e-9 * std::fabs(psi(m, u)));
    }
  }
}

TEST_CASE("property: phi inverts psi and is increasing") {
  for (const auto& m : standard_models()) {
    const double lo = mean_xi1(m) < 0.0 ? theta(m) : 0.0;
    double prev = -1.0;
    for (double q : log_grid(1e-3, 1e3, 30)) {
      const double p = phi(m, q);
      CHECK(p > prev);
      prev = p;
      CHECK(std::fabs(psi(m, p) - q) <= 1e-11 * q);
    }
    for (double u : log_grid(lo + 1e-2, lo + 50.0, 20)) {
      CHECK(std::fabs(phi(m, psi(m, u)) - u) <= 1e-11 * u);
    }
  }
}

TEST_CASE("property: shifted evaluation and finite-difference derivative") {
  for (const auto& m : standard_models()) {
    const double q = 1.5;
    ShiftedExponent s = shift(m, q);
    CHECK(std::fabs(s(0.0)) <= 1e-12 * std::max(1.0, q));
    CHECK(s.derivative_at_zero() > 0.0);
    for (double u : log_grid(0.1, 30.0, 15)) {
      CHECK(std::fabs(s(u) + q - psi(m, u + s.gamma())) <= 1e-12 * std::max(1.0, std::fabs(psi(m, u + s.gamma()))));
      const double h = 1e-5 * u;
      const double fd = (psi(m, u + h) - psi(m, u - h)) / (2.0 * h);
      CHECK(psi_derivative(m, u) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}
