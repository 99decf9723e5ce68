#pragma once

// Closed-form reference for xi a 2-scaled Brownian motion with drift 2 b0,
// psi(u) = 2u^2 + 2 b0 u, killed at rate q > 0. Everything here is computed
// independently of the power-series machinery: Kummer's function is only ever
// summed on nonnegative arguments, and the density is a direct quadrature.

#include "expfun/levy_model.hpp"

namespace expfun {

struct BrownianCase {
  double b0 = 0.0;
  double q = 0.0;
  /// phi(q) = (sqrt(2q + b0^2) - b0) / 2
  double phi = 0.0;
  /// varrho = b0 + 2 phi; the shifted exponent is 2u^2 + 2 varrho u.
  double varrho = 0.0;
};

BrownianCase brownian_case(double b0, double q);

/// BrownianDrift(b = 2 b0, sigma = 4).
LevyModel to_model(const BrownianCase& c);

/// A BrownianDrift(b, sigma) model sped up by 4/sigma is a standard case, and
/// Sigma(model) = time_scale * Sigma(case) with time_scale = 4/sigma.
struct ScaledBrownianCase {
  BrownianCase standard;
  double time_scale = 1.0;
};

ScaledBrownianCase brownian_case_for(const LevyModel& model, double q);

/// Kummer's confluent hypergeometric function Phi(a, c; z) = 1F1(a; c; z).
/// Negative arguments go through Phi(a,c;z) = e^z Phi(c-a,c;-z).
double kummer_phi(double a, double c, double z);

/// C = Gamma(varrho + 1 - phi) / (2^phi Gamma(varrho + 1)).
double closed_C(const BrownianCase& c);

/// s(t) = (varrho-phi)/(2^phi Gamma(phi)) t^(-phi-1) int_0^1 e^{-u/(2t)} (1-u)^(varrho-phi-1) u^phi du.
double yor_density(const BrownianCase& c, double t);

}  // namespace expfun
