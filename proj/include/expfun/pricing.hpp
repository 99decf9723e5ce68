#pragma once

// Asian options on e^xi in the Laplace (exponential-time) form
//
//   A(y, K, q) = E_y[(Sigma_{e_q} - K)^+],
//   A(0, K, q) = C/(phi(q)-1) K^(1-phi(q)) O(phi(q)-1; 1/K),   q > psi(1),
//
// with C the constant of the law of Sigma_{e_q} and O built on the exponent
// shifted by phi(q). A(y,K,q) = e^y A(0, K e^-y, q).

#include "expfun/levy_model.hpp"

namespace expfun {

struct AsianQuote {
  LevyModel model;
  double q = 0.0;
  double K = 0.0;
  double y = 0.0;
  double price = 0.0;
  double error_bound = 0.0;
  double phi_q = 0.0;
};

/// Solves psi(1) = r for the drift, keeping every other parameter.
LevyModel calibrate_drift(const FamilyParams& family, double r);

/// E[Sigma_{e_q}] = 1/(q - psi(1)).
double zero_strike_value(const LevyModel& model, double q);

AsianQuote asian_price(const LevyModel& model, double q, double K, double y, double rel_tol);

}  // namespace expfun
