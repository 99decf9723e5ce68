#pragma once

// Law of the exponential functional Sigma_{e_q} = int_0^{e_q} exp(xi_s) ds:
//
//   S(t) = P(Sigma >= t) = C t^-gamma O(gamma; 1/t),
//   s(t) = gamma C t^(-gamma-1) O(1+gamma; 1/t),
//
// where the constant C is fixed by O(gamma; t) ~ t^-gamma / C as t -> inf.

#include <memory>
#include <string>

#include "expfun/levy_model.hpp"
#include "expfun/power_series.hpp"

namespace expfun {

struct CEstimateOptions {
  /// First point of the geometric grid t_j = t0 2^j.
  double t0 = 8.0;
  /// Largest j (at most 12).
  int levels = 10;
  /// Grid points whose series would need more bits than this are dropped.
  int max_bits = 24000;
};

struct LawResult {
  double gamma = 0.0;
  double C_gamma = 0.0;
  /// Estimated relative error of C_gamma.
  double C_gamma_error = 0.0;
  ShiftedExponent shifted;
  int grid_points = 0;
  /// "richardson" or "aitken": which accelerator produced C_gamma.
  std::string method;
};

/// A law evaluation with its propagated absolute error.
struct LawValue {
  double value = 0.0;
  double error = 0.0;
};

LawResult estimate_C(const ShiftedExponent& shifted, double rel_tol, const CEstimateOptions& options = {});

/// Memoized estimate_C for (model, q). Thread-safe; concurrent callers for the
/// same key share one computation.
std::shared_ptr<const LawResult> law_for(const LevyModel& model, double q, double rel_tol);

/// Drops every memoized constant.
void clear_law_cache();

LawValue survival_value(const LawResult& law, double t, double rel_tol);
LawValue density_value(const LawResult& law, double t, double rel_tol);

double survival(const LevyModel& model, double q, double t, double rel_tol);
double density(const LevyModel& model, double q, double t, double rel_tol);

/// t with S(t) = p, by bisection in log t. Plumbing for tables, not part of the theory.
double survival_quantile(const LevyModel& model, double q, double p, double rel_tol);

}  // namespace expfun
