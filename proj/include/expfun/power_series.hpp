#pragma once

// The entire functions attached to a conservative exponent psi_gamma:
//
//   I(z)        = sum_n a_n z^n,
//   O(kappa; z) = sum_n (-1)^n [Gamma(kappa+n)/Gamma(kappa)] a_n z^n,
//
// with a_0 = 1 and a_n = a_{n-1} / psi_gamma(n). Both are summed with the term
// recurrence t_{n+1} = t_n * w_n * z / psi_gamma(n+1), which keeps the
// astronomically scaled factors Gamma(kappa+n) and a_n from ever being formed.

#include <vector>

#include "expfun/levy_model.hpp"

namespace expfun {

struct SeriesValue {
  double value = 0.0;
  /// Bound on the modulus of the discarded tail.
  double truncation_bound = 0.0;
  /// Bound on the accumulated rounding error at the precision used.
  double rounding_bound = 0.0;
  long terms_used = 0;
  double max_term_magnitude = 1.0;
  double log_max_term = 0.0;
  /// max_term_magnitude / |value|; 1 for positive series.
  double condition = 1.0;
  int precision_bits = 53;

  /// Combined truncation and rounding error relative to |value|.
  double relative_error() const;
};

inline constexpr long kMaxSeriesTerms = 100000;

/// a_0..a_{n_max}.
std::vector<double> coefficients(const ShiftedExponent& shifted, int n_max);

SeriesValue eval_I(const ShiftedExponent& shifted, double z, double rel_tol);

/// Double-precision evaluation of O(kappa; z). Throws PrecisionInsufficient
/// when the cancellation in the alternating sum exceeds what rel_tol allows.
SeriesValue eval_O(const ShiftedExponent& shifted, double kappa, double z, double rel_tol);

/// Same contract as eval_O with every operation (gamma and psi_gamma included)
/// carried out at precision_bits.
SeriesValue eval_O_extended(const ShiftedExponent& shifted, double kappa, double z, double rel_tol,
                            int precision_bits);

struct PrecisionPolicy {
  /// Condition number above which double precision is abandoned outright.
  double max_double_condition = 1e12;
  int max_bits = 1 << 20;
};

/// eval_O with automatic precision escalation: double first, then extended
/// precision with doubling until both error budgets fall below rel_tol.
SeriesValue evaluate_O(const ShiftedExponent& shifted, double kappa, double z, double rel_tol,
                       const PrecisionPolicy& policy = {});

/// log of the largest |term| of the O series, computed in log space. Throws
/// MaxTermsExceeded when the terms are still growing at the hard term cap.
double log_peak_term(const ShiftedExponent& shifted, double kappa, double z);

/// Starting precision for the escalation loop.
int initial_precision_bits(const ShiftedExponent& shifted, double kappa, double z, double rel_tol,
                           double double_condition);

}  // namespace expfun
