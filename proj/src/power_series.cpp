#include "expfun/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace expfun {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kUnitRoundoff = 0x1.0p-53;

void check_args(double z, double rel_tol) {
  if (!(z >= 0.0) || !std::isfinite(z)) fail(ErrorCode::DomainError, "series argument z must be finite and >= 0");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) fail(ErrorCode::DomainError, "rel_tol must lie in (0,1)");
}

void check_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) fail(ErrorCode::DomainError, "kappa must be finite and > 0");
}

SeriesValue trivial_value(int bits) {
  SeriesValue r;
  r.value = 1.0;
  r.terms_used = 1;
  r.precision_bits = bits;
  return r;
}

// Upper bound on every later ratio |t_{m+1}/t_m|, m >= n. Uses that
// u/psi_gamma(u) is nonincreasing (psi_gamma convex, psi_gamma(0) = 0) and that
// (kappa+m)/(m+1) is monotone in m.
double ratio_bound(bool weighted, double kappa, double z, long n, double psi_next) {
  double w = weighted ? std::max(1.0, (kappa + static_cast<double>(n)) / static_cast<double>(n + 1)) : 1.0;
  return z * w * static_cast<double>(n + 1) / psi_next;
}

// Sums 1 + sum_{n>=1} t_n with t_{n+1} = s * t_n * w_n * z / psi_gamma(n+1),
// where s = -1 (alternating) or +1 and w_n = kappa + n (weighted) or 1.
//
// Stops once the tail is certified monotone and |t_n| <= rel_tol |S_n| for
// three consecutive terms.
template <class Real>
SeriesValue sum_series(const ShiftedEvaluator<Real>& psi_g, double kappa, double z, double rel_tol,
                       bool alternating, bool weighted, int bits) {
  const Real zr(z);
  const Real kr(kappa);
  Real t(1.0);
  Real sum(1.0);
  double log_max = 0.0;
  const double log_tol = std::log(rel_tol);
  bool certified = false;
  int small_run = 0;
  long n = 0;
  for (;; ++n) {
    if (n + 2 > kMaxSeriesTerms)
      fail(ErrorCode::MaxTermsExceeded, "series did not meet the stopping rule within " +
                                            std::to_string(kMaxSeriesTerms) + " terms");
    Real p = psi_g(n + 1);
    if (!(p > 0.0))
      fail(ErrorCode::NonpositiveExponentValue,
           "psi_gamma(" + std::to_string(n + 1) + ") <= 0: the shifted exponent is not conservative");
    if (weighted) t *= kr + static_cast<double>(n);
    t *= zr;
    t /= p;
    if (alternating) t *= -1.0;
    sum += t;

    const double la = log_abs(t);
    if constexpr (std::is_same_v<Real, double>) {
      if (!std::isfinite(sum) || !std::isfinite(t))
        fail(ErrorCode::PrecisionInsufficient, "series terms overflow double precision");
    }
    log_max = std::max(log_max, la);
    if (!certified && ratio_bound(weighted, kappa, z, n, to_double(p)) < 1.0) certified = true;
    if (certified && la <= log_tol + log_abs(sum))
      ++small_run;
    else
      small_run = 0;
    if (small_run >= 3) break;
  }

  // The last included term is t_{n+1}; bound the remainder by the next term.
  const long last = n + 1;
  const double psi_after = to_double(psi_g(last + 1));
  const double w = weighted ? kappa + static_cast<double>(last) : 1.0;
  const double r_next = w * z / psi_after;
  const double next = std::exp(log_abs(t)) * r_next;

  SeriesValue r;
  r.value = to_double(sum);
  r.terms_used = last + 1;
  r.precision_bits = bits;
  r.log_max_term = log_max;
  r.max_term_magnitude = std::exp(log_max);
  const double log_value = log_abs(sum);
  r.condition = std::max(1.0, std::exp(log_max - log_value));
  if (alternating) {
    r.truncation_bound = next;
  } else {
    r.truncation_bound = r_next < 1.0 ? next / (1.0 - r_next) : std::numeric_limits<double>::infinity();
  }
  // Each term carries O(n) roundings from the recurrence; the sum adds O(n) more.
  r.rounding_bound = std::exp(log_max + std::log(2.0 * static_cast<double>(r.terms_used)) -
                              static_cast<double>(bits) * kLn2);
  if (!alternating) r.condition = 1.0;
  return r;
}

}  // namespace

double SeriesValue::relative_error() const {
  double mag = std::fabs(value);
  if (mag == 0.0) return std::numeric_limits<double>::infinity();
  return (truncation_bound + rounding_bound) / mag;
}

std::vector<double> coefficients(const ShiftedExponent& shifted, int n_max) {
  if (n_max < 0) fail(ErrorCode::DomainError, "n_max must be >= 0");
  std::vector<double> a(static_cast<std::size_t>(n_max) + 1);
  a[0] = 1.0;
  for (int k = 1; k <= n_max; ++k) {
    double p = shifted(static_cast<double>(k));
    if (!(p > 0.0))
      fail(ErrorCode::NonpositiveExponentValue, "psi_gamma(" + std::to_string(k) + ") <= 0");
    a[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k) - 1] / p;
  }
  return a;
}

SeriesValue eval_I(const ShiftedExponent& shifted, double z, double rel_tol) {
  check_args(z, rel_tol);
  if (z == 0.0) return trivial_value(53);
  SeriesValue r = sum_series<double>(shifted.evaluator<double>(), 1.0, z, rel_tol, false, false, 53);
  if (!std::isfinite(r.value)) fail(ErrorCode::NumericalInconsistency, "I(z) overflows double precision");
  return r;
}

SeriesValue eval_O(const ShiftedExponent& shifted, double kappa, double z, double rel_tol) {
  check_args(z, rel_tol);
  check_kappa(kappa);
  if (z == 0.0) return trivial_value(53);
  SeriesValue r = sum_series<double>(shifted.evaluator<double>(), kappa, z, rel_tol, true, true, 53);
  // Only a cancellation that leaves no digit inside rel_tol is refused here;
  // evaluate_O applies the stricter rounding budget.
  if (!(r.condition * kUnitRoundoff <= rel_tol) || !std::isfinite(r.value)) {
    std::ostringstream os;
    os << "O(" << kappa << ";" << z << ") has condition " << r.condition
       << ": no reliable digits at double precision for rel_tol " << rel_tol;
    fail(ErrorCode::PrecisionInsufficient, os.str());
  }
  return r;
}

SeriesValue eval_O_extended(const ShiftedExponent& shifted, double kappa, double z, double rel_tol,
                            int precision_bits) {
  check_args(z, rel_tol);
  check_kappa(kappa);
  if (precision_bits < 53) fail(ErrorCode::DomainError, "precision_bits must be >= 53");
  if (z == 0.0) return trivial_value(precision_bits);
  ScopedPrecision guard(precision_bits);
  return sum_series<BigFloat>(shifted.evaluator<BigFloat>(), kappa, z, rel_tol, true, true, precision_bits);
}

namespace {

struct TermScan {
  double log_peak = 0.0;
  long terms = 0;
};

// Walks log|t_n| in double precision until the terms are certified to decay and
// have fallen below rel_tol times the rough size z^-kappa of the result.
TermScan scan_terms(const ShiftedExponent& shifted, double kappa, double z, double rel_tol) {
  TermScan out;
  if (z == 0.0) return out;
  double log_t = 0.0;
  const double log_z = std::log(z);
  const double log_floor = std::log(rel_tol) - kappa * std::log1p(z) - 3.0 * kLn2;
  bool certified = false;
  for (long n = 0; n + 1 < kMaxSeriesTerms; ++n) {
    const double p = shifted(static_cast<double>(n + 1));
    if (!(p > 0.0)) fail(ErrorCode::NonpositiveExponentValue, "psi_gamma(n) <= 0 while scanning terms");
    log_t += std::log(kappa + static_cast<double>(n)) + log_z - std::log(p);
    out.log_peak = std::max(out.log_peak, log_t);
    certified = certified || ratio_bound(true, kappa, z, n, p) < 1.0;
    if (certified && log_t < log_floor) {
      out.terms = n + 2;
      return out;
    }
  }
  std::ostringstream os;
  os << "O(" << kappa << ";" << z << ") needs more than " << kMaxSeriesTerms << " terms";
  fail(ErrorCode::MaxTermsExceeded, os.str());
}

}  // namespace

double log_peak_term(const ShiftedExponent& shifted, double kappa, double z) {
  return scan_terms(shifted, kappa, z, 1e-17).log_peak;
}

int initial_precision_bits(const ShiftedExponent& shifted, double kappa, double z, double rel_tol,
                           double double_condition) {
  // The alternating sum loses about log2(peak/|value|) bits; |O(kappa;z)| decays
  // roughly like z^-kappa for large z.
  const double peak_bits = log_peak_term(shifted, kappa, z) / kLn2;
  const double value_bits = kappa * std::log2(1.0 + z);
  const double tol_bits = -std::log2(rel_tol);
  const double from_peak = 64.0 + peak_bits + value_bits + tol_bits + std::log2(2.0 + z) + 16.0;
  double cond_log10 = std::isfinite(double_condition) ? std::log10(std::max(1.0, double_condition)) : 0.0;
  const double heuristic = 64.0 + std::ceil(1.5 * z) + 10.0 * cond_log10;
  return static_cast<int>(std::ceil(std::max(from_peak, heuristic)));
}

SeriesValue evaluate_O(const ShiftedExponent& shifted, double kappa, double z, double rel_tol,
                       const PrecisionPolicy& policy) {
  check_args(z, rel_tol);
  check_kappa(kappa);
  double double_condition = std::numeric_limits<double>::infinity();
  // Fails fast when the term budget cannot be met; skips the double attempt
  // when the peak term alone rules it out.
  if (scan_terms(shifted, kappa, z, rel_tol).log_peak < std::log(policy.max_double_condition)) {
    try {
      SeriesValue r = eval_O(shifted, kappa, z, rel_tol);
      const double mag = std::fabs(r.value);
      if (r.condition <= policy.max_double_condition && r.rounding_bound <= rel_tol * mag &&
          r.truncation_bound <= rel_tol * mag)
        return r;
      double_condition = r.condition;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionInsufficient) throw;
    }
  }

  int bits = initial_precision_bits(shifted, kappa, z, rel_tol, double_condition);
  while (bits <= policy.max_bits) {
    SeriesValue r = eval_O_extended(shifted, kappa, z, rel_tol, bits);
    const double mag = std::fabs(r.value);
    const bool rounding_ok = r.rounding_bound <= 0.25 * rel_tol * mag;
    const bool truncation_ok = r.truncation_bound <= rel_tol * mag;
    if (rounding_ok && truncation_ok) return r;
    // Bits still missing according to this attempt's own budget.
    double deficit = mag > 0.0 ? std::log2(r.rounding_bound / (0.25 * rel_tol * mag)) : 64.0;
    bits = std::max(2 * bits, bits + static_cast<int>(std::ceil(std::max(deficit, 0.0))) + 32);
  }
  fail(ErrorCode::PrecisionInsufficient, "precision escalation exceeded " + std::to_string(policy.max_bits) + " bits");
}

}  // namespace expfun
