#include "expfun/brownian_oracle.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <variant>

namespace expfun {

namespace {

using Long = long double;

// Sum of (a)_n/(c)_n z^n/n! for z >= 0.
Long kummer_nonnegative(Long a, Long c, Long z) {
  Long term = 1.0L;
  Long sum = 1.0L;
  Long comp = 0.0L;  // Kahan compensation
  int quiet = 0;
  const Long eps = std::numeric_limits<Long>::epsilon();
  for (long n = 0; n < 200000; ++n) {
    term *= (a + n) * z / ((c + n) * (n + 1));
    if (term == 0.0L) break;
    Long y = term - comp;
    Long t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    // Past n > z the ratio is below one for good once a and c are absorbed.
    const bool decreasing = n > z + std::fabs(a) + std::fabs(c);
    if (decreasing && std::fabs(term) <= eps * std::fabs(sum)) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  return sum;
}

}  // namespace

BrownianCase brownian_case(double b0, double q) {
  if (!(q > 0.0) || !std::isfinite(q) || !std::isfinite(b0))
    fail(ErrorCode::InvalidParameter, "Brownian case needs finite b0 and q > 0");
  const double phi = 0.5 * (std::sqrt(2.0 * q + b0 * b0) - b0);
  return {b0, q, phi, b0 + 2.0 * phi};
}

LevyModel to_model(const BrownianCase& c) { return LevyModel(BrownianDrift{2.0 * c.b0, 4.0}); }

ScaledBrownianCase brownian_case_for(const LevyModel& model, double q) {
  const auto* p = std::get_if<BrownianDrift>(&model.params());
  if (p == nullptr) fail(ErrorCode::InvalidParameter, "the Brownian oracle needs a brownian model");
  // xi'_t = xi_{4t/sigma} has psi' = (4/sigma) psi = 2u^2 + (4b/sigma) u.
  const double speed = 4.0 / p->sigma;
  return {brownian_case(0.5 * speed * p->b, speed * q), speed};
}

double kummer_phi(double a, double c, double z) {
  if (c <= 0.0 && c == std::floor(c)) fail(ErrorCode::DomainError, "Kummer function undefined for c a nonpositive integer");
  if (z == 0.0) return 1.0;
  if (z > 0.0) return static_cast<double>(kummer_nonnegative(a, c, z));
  const Long x = -static_cast<Long>(z);
  return static_cast<double>(std::exp(-x) * kummer_nonnegative(static_cast<Long>(c) - a, c, x));
}

double closed_C(const BrownianCase& c) {
  return std::exp(std::lgamma(c.varrho + 1.0 - c.phi) - c.phi * std::log(2.0) - std::lgamma(c.varrho + 1.0));
}

double yor_density(const BrownianCase& c, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorCode::DomainError, "yor_density needs t > 0");
  const Long beta = static_cast<Long>(c.varrho) - c.phi;
  const Long phi = c.phi;
  const Long inv2t = 0.5L / t;
  // Split at 1/2 and reflect the upper half so both endpoint singularities sit at 0.
  auto lower = [&](Long u) { return std::exp(-u * inv2t) * std::pow(1.0L - u, beta - 1.0L) * std::pow(u, phi); };
  auto upper = [&](Long w) { return std::exp(-(1.0L - w) * inv2t) * std::pow(w, beta - 1.0L) * std::pow(1.0L - w, phi); };
  boost::math::quadrature::tanh_sinh<Long> integrator;
  Long err1 = 0, err2 = 0, l1 = 0;
  const Long tol = 1e-15L;
  Long i1 = integrator.integrate(lower, 0.0L, 0.5L, tol, &err1, &l1);
  Long i2 = integrator.integrate(upper, 0.0L, 0.5L, tol, &err2, &l1);
  const Long integral = i1 + i2;
  if (!(err1 + err2 <= 1e-12L * integral)) {
    std::ostringstream os;
    os << "tanh-sinh quadrature error " << static_cast<double>(err1 + err2) << " for integral "
       << static_cast<double>(integral);
    fail(ErrorCode::QuadratureFailure, os.str());
  }
  const Long log_coef = std::log(beta) - phi * std::log(2.0L) - std::lgamma(phi) - (phi + 1.0L) * std::log(Long(t));
  return static_cast<double>(std::exp(log_coef) * integral);
}

}  // namespace expfun
