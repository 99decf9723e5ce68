#include "expfun/law.hpp"

#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <sstream>
#include <vector>

#include "expfun/acceleration.hpp"

namespace expfun {

namespace {

constexpr double kDivergedThreshold = 1e-3;
constexpr double kInnerTol = 1e-15;

void check_tol(double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1e-2)) fail(ErrorCode::DomainError, "rel_tol must lie in (0, 1e-2)");
}

void check_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorCode::DomainError, "t must be finite and > 0");
}

// The C_gamma grid is always resolved at kInnerTol, so rel_tol is not part of the key.
std::string cache_key(const LevyModel& model, double q) {
  std::ostringstream os;
  os.precision(17);
  os << model.describe() << "|q=" << q;
  return os.str();
}

struct Cache {
  std::mutex mutex;
  std::map<std::string, std::shared_future<std::shared_ptr<const LawResult>>> entries;
};

Cache& cache() {
  static Cache c;
  return c;
}

// Applies the clamping policy to a probability-like value.
LawValue settle(double value, double error, double lo, double hi, const char* what) {
  if (value < lo) {
    if (lo - value <= error) return {lo, error};
    std::ostringstream os;
    os << what << " = " << value << " below " << lo << " beyond error bound " << error;
    fail(ErrorCode::NumericalInconsistency, os.str());
  }
  if (value > hi) {
    if (value - hi <= error) return {hi, error};
    std::ostringstream os;
    os << what << " = " << value << " above " << hi << " beyond error bound " << error;
    fail(ErrorCode::NumericalInconsistency, os.str());
  }
  return {value, error};
}

}  // namespace

LawResult estimate_C(const ShiftedExponent& shifted, double rel_tol, const CEstimateOptions& options) {
  check_tol(rel_tol);
  if (!(options.t0 > 0.0) || options.levels < 2 || options.levels > 12)
    fail(ErrorCode::DomainError, "C estimation grid needs t0 > 0 and 2 <= levels <= 12");
  const double gamma = shifted.gamma();

  std::vector<double> h;
  std::vector<double> r;
  for (int j = 0; j <= options.levels; ++j) {
    const double t = options.t0 * std::ldexp(1.0, j);
    int bits = 0;
    try {
      bits = initial_precision_bits(shifted, gamma, t, kInnerTol, 0.0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MaxTermsExceeded) throw;
      break;
    }
    if (bits > options.max_bits) break;
    SeriesValue o = evaluate_O(shifted, gamma, t, kInnerTol);
    h.push_back(1.0 / t);
    r.push_back(std::pow(t, gamma) * o.value);
  }
  if (r.size() < 3)
    fail(ErrorCode::ExtrapolationDiverged, "fewer than three affordable grid points for the C_gamma limit");

  const auto rich = richardson<double>(h, r);
  const auto aitk = iterated_aitken<double>(r);
  const bool use_rich = rich.error <= aitk.error;
  const auto& best = use_rich ? rich : aitk;
  const auto& other = use_rich ? aitk : rich;
  double abs_err = best.error;
  const double gap = std::fabs(best.value - other.value);
  if (gap > best.error + other.error) abs_err = std::max(abs_err, gap);
  abs_err = std::max(abs_err, kInnerTol * std::fabs(best.value));

  LawResult out{gamma, 1.0 / best.value, abs_err / std::fabs(best.value), shifted,
                static_cast<int>(r.size()), use_rich ? "richardson" : "aitken"};
  if (!(out.C_gamma > 0.0) || !std::isfinite(out.C_gamma) || !(out.C_gamma_error <= kDivergedThreshold)) {
    std::ostringstream os;
    os << "C_gamma extrapolation did not settle: C=" << out.C_gamma << " relative error " << out.C_gamma_error;
    fail(ErrorCode::ExtrapolationDiverged, os.str());
  }
  return out;
}

std::shared_ptr<const LawResult> law_for(const LevyModel& model, double q, double rel_tol) {
  check_tol(rel_tol);
  ShiftedExponent shifted = shift(model, q);
  const std::string key = cache_key(model, q);
  Cache& c = cache();
  std::promise<std::shared_ptr<const LawResult>> promise;
  std::shared_future<std::shared_ptr<const LawResult>> future;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(c.mutex);
    auto it = c.entries.find(key);
    if (it != c.entries.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      c.entries.emplace(key, future);
      owner = true;
    }
  }
  if (owner) {
    try {
      promise.set_value(std::make_shared<const LawResult>(estimate_C(shifted, rel_tol)));
    } catch (...) {
      promise.set_exception(std::current_exception());
      std::lock_guard<std::mutex> lock(c.mutex);
      c.entries.erase(key);
    }
  }
  return future.get();
}

void clear_law_cache() {
  Cache& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  c.entries.clear();
}

LawValue survival_value(const LawResult& law, double t, double rel_tol) {
  check_t(t);
  check_tol(rel_tol);
  const double g = law.gamma;
  SeriesValue o = evaluate_O(law.shifted, g, 1.0 / t, rel_tol);
  const double value = law.C_gamma * std::pow(t, -g) * o.value;
  const double error = std::fabs(value) * (law.C_gamma_error + o.relative_error() + 4e-16);
  return settle(value, error, 0.0, 1.0, "S(t)");
}

LawValue density_value(const LawResult& law, double t, double rel_tol) {
  check_t(t);
  check_tol(rel_tol);
  const double g = law.gamma;
  SeriesValue o = evaluate_O(law.shifted, 1.0 + g, 1.0 / t, rel_tol);
  const double value = g * law.C_gamma * std::pow(t, -g - 1.0) * o.value;
  const double error = std::fabs(value) * (law.C_gamma_error + o.relative_error() + 4e-16);
  return settle(value, error, 0.0, std::numeric_limits<double>::infinity(), "s(t)");
}

double survival(const LevyModel& model, double q, double t, double rel_tol) {
  return survival_value(*law_for(model, q, rel_tol), t, rel_tol).value;
}

double density(const LevyModel& model, double q, double t, double rel_tol) {
  return density_value(*law_for(model, q, rel_tol), t, rel_tol).value;
}

double survival_quantile(const LevyModel& model, double q, double p, double rel_tol) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::DomainError, "quantile level must lie in (0, 1)");
  const auto law = law_for(model, q, rel_tol);
  auto S = [&](double t) { return survival_value(*law, t, rel_tol).value; };
  double lo = 1.0, hi = 1.0;
  while (S(lo) < p) {
    lo *= 0.5;
    if (lo < 1e-12) fail(ErrorCode::NumericalInconsistency, "quantile bracket collapsed toward 0");
  }
  while (S(hi) > p) {
    hi *= 2.0;
    if (hi > 1e12) fail(ErrorCode::NumericalInconsistency, "quantile bracket escaped to infinity");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = std::sqrt(lo * hi);
    (S(mid) > p ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace expfun
