#include "expfun/pricing.hpp"

#include <cmath>
#include <sstream>

#include "expfun/law.hpp"
#include "expfun/power_series.hpp"

namespace expfun {

namespace {

void require_laplace_parameter(const LevyModel& model, double q) {
  const double psi1 = model.eval(1.0);
  if (!(q > psi1) || !std::isfinite(q)) {
    std::ostringstream os;
    os.precision(17);
    os << "Laplace parameter too small: q=" << q << " must exceed psi(1)=" << psi1;
    fail(ErrorCode::LaplaceParameterTooSmall, os.str());
  }
}

}  // namespace

LevyModel calibrate_drift(const FamilyParams& family, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorCode::InvalidParameter, "risk-free rate r must be finite and > 0");
  // psi(1) is affine in b with unit slope.
  LevyModel driftless(with_drift(family, 0.0));
  const double b = r - driftless.eval(1.0);
  return LevyModel(with_drift(family, b));
}

double zero_strike_value(const LevyModel& model, double q) {
  require_laplace_parameter(model, q);
  return 1.0 / (q - model.eval(1.0));
}

AsianQuote asian_price(const LevyModel& model, double q, double K, double y, double rel_tol) {
  require_laplace_parameter(model, q);
  if (!(K > 0.0) || !std::isfinite(K)) fail(ErrorCode::DomainError, "strike K must be finite and > 0");
  if (!std::isfinite(y)) fail(ErrorCode::DomainError, "initial log-price y must be finite");

  if (y != 0.0) {
    AsianQuote base = asian_price(model, q, K * std::exp(-y), 0.0, rel_tol);
    const double scale = std::exp(y);
    return {model, q, K, y, scale * base.price, scale * base.error_bound, base.phi_q};
  }

  auto law = law_for(model, q, rel_tol);
  const double phi_q = law->gamma;
  const double kappa = phi_q - 1.0;
  SeriesValue o = evaluate_O(law->shifted, kappa, 1.0 / K, rel_tol);
  const double price = law->C_gamma / kappa * std::pow(K, -kappa) * o.value;
  double rel_err = law->C_gamma_error + o.relative_error() + 4e-16;
  // The formula carries a genuine 1/(phi(q)-1) factor.
  if (kappa < 1e-4) rel_err /= kappa;
  double error = std::fabs(price) * rel_err;

  const double upper = 1.0 / (q - model.eval(1.0));
  if (price < 0.0) {
    if (-price > error) fail(ErrorCode::NumericalInconsistency, "negative Asian price beyond its error bound");
    return {model, q, K, y, 0.0, error, phi_q};
  }
  if (price > upper + error) fail(ErrorCode::NumericalInconsistency, "Asian price exceeds the zero-strike value");
  return {model, q, K, y, price, error, phi_q};
}

}  // namespace expfun
