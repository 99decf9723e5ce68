#include "expfun/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace expfun {

namespace {

bool finite(double x) { return std::isfinite(x); }

void validate(const BrownianDrift& p) {
  if (!finite(p.b) || !finite(p.sigma) || p.sigma < 0.0)
    fail(ErrorCode::InvalidParameter, "brownian: b must be finite and sigma >= 0");
  if (p.sigma == 0.0)
    fail(ErrorCode::UnboundedVariationViolated, "brownian: sigma = 0 gives a linear exponent (bounded variation)");
}

void validate(const JumpDiffusion& p) {
  if (!finite(p.b) || !finite(p.sigma) || !finite(p.lambda) || !finite(p.eta) || p.sigma < 0.0 ||
      !(p.lambda > 0.0) || !(p.eta > 0.0))
    fail(ErrorCode::InvalidParameter, "jumpdiff: requires finite b, sigma >= 0, lambda > 0, eta > 0");
  if (p.sigma == 0.0)
    fail(ErrorCode::UnboundedVariationViolated,
         "jumpdiff: sigma = 0 with finite-activity jumps has bounded variation");
}

void validate(const StableDrift& p) {
  if (!finite(p.b) || !finite(p.c) || !finite(p.alpha) || !(p.c > 0.0) || !(p.alpha > 0.0) || p.alpha > 2.0)
    fail(ErrorCode::InvalidParameter, "stable: requires finite b, c > 0, 0 < alpha <= 2");
  if (p.alpha <= 1.0)
    fail(ErrorCode::UnboundedVariationViolated, "stable: alpha <= 1 gives psi(u)/u bounded");
}

// Relative bisection on a bracket [lo, hi] with f(lo) <= 0 < f(hi), f increasing.
template <class F>
double bisect_increasing(F f, double lo, double hi) {
  for (int it = 0; it < 400; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * std::max(std::fabs(hi), std::numeric_limits<double>::min())) break;
  }
  return 0.5 * (lo + hi);
}

// One Newton step, kept only if it reduces the residual.
template <class F, class DF>
double newton_polish(F f, DF df, double x) {
  double fx = f(x);
  double d = df(x);
  if (!(d > 0.0)) return x;
  double y = x - fx / d;
  if (std::isfinite(y) && std::fabs(f(y)) <= std::fabs(fx)) return y;
  return x;
}

// Minimizer of psi on [0, inf), located as the zero of psi'.
double psi_minimizer(const LevyModel& m) {
  if (m.eval_derivative(0.0) >= 0.0) return 0.0;
  double hi = 1.0;
  while (m.eval_derivative(hi) <= 0.0) {
    hi *= 2.0;
    if (!std::isfinite(hi)) fail(ErrorCode::NoPositiveRoot, "psi' does not change sign");
  }
  return bisect_increasing([&](double u) { return m.eval_derivative(u); }, 0.0, hi);
}

}  // namespace

LevyModel::LevyModel(const FamilyParams& params) : params_(params) {
  std::visit([](const auto& p) { validate(p); }, params_);
}

double LevyModel::drift() const noexcept {
  return std::visit([](const auto& p) { return p.b; }, params_);
}

std::string LevyModel::family_name() const {
  return std::visit(
      [](const auto& p) -> std::string {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BrownianDrift>) return "brownian";
        else if constexpr (std::is_same_v<P, JumpDiffusion>) return "jumpdiff";
        else return "stable";
      },
      params_);
}

std::string LevyModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BrownianDrift>)
          os << "brownian(b=" << p.b << ",sigma=" << p.sigma << ")";
        else if constexpr (std::is_same_v<P, JumpDiffusion>)
          os << "jumpdiff(b=" << p.b << ",sigma=" << p.sigma << ",lambda=" << p.lambda << ",eta=" << p.eta << ")";
        else
          os << "stable(b=" << p.b << ",c=" << p.c << ",alpha=" << p.alpha << ")";
      },
      params_);
  return os.str();
}

bool operator==(const LevyModel& a, const LevyModel& b) {
  return std::visit(
      [](const auto& x, const auto& y) -> bool {
        using X = std::decay_t<decltype(x)>;
        using Y = std::decay_t<decltype(y)>;
        if constexpr (!std::is_same_v<X, Y>) {
          return false;
        } else if constexpr (std::is_same_v<X, BrownianDrift>) {
          return x.b == y.b && x.sigma == y.sigma;
        } else if constexpr (std::is_same_v<X, JumpDiffusion>) {
          return x.b == y.b && x.sigma == y.sigma && x.lambda == y.lambda && x.eta == y.eta;
        } else {
          return x.b == y.b && x.c == y.c && x.alpha == y.alpha;
        }
      },
      a.params_, b.params_);
}

LevyModel build_model(const FamilyParams& params) { return LevyModel(params); }

FamilyParams with_drift(const FamilyParams& params, double b) {
  FamilyParams out = params;
  std::visit([b](auto& p) { p.b = b; }, out);
  return out;
}

double psi(const LevyModel& model, double u) {
  if (!(u >= 0.0)) fail(ErrorCode::DomainError, "psi is only defined for u >= 0");
  return model.eval(u);
}

double psi_derivative(const LevyModel& model, double u) {
  if (!(u >= 0.0)) fail(ErrorCode::DomainError, "psi' is only defined for u >= 0");
  return model.eval_derivative(u);
}

double mean_xi1(const LevyModel& model) { return model.eval_derivative(0.0); }

double theta(const LevyModel& model) {
  if (!(mean_xi1(model) < 0.0))
    fail(ErrorCode::NoPositiveRoot, "psi has no positive root: E[xi_1] >= 0");
  const double lo = psi_minimizer(model);
  double hi = std::max(2.0 * lo, lo + 1.0);
  while (model.eval(hi) <= 0.0) hi = lo + 2.0 * (hi - lo);
  auto f = [&](double u) { return model.eval(u); };
  double root = bisect_increasing(f, lo, hi);
  return newton_polish(f, [&](double u) { return model.eval_derivative(u); }, root);
}

double phi(const LevyModel& model, double q) {
  if (!(q >= 0.0) || !std::isfinite(q)) fail(ErrorCode::DomainError, "phi requires finite q >= 0");
  const double lo = mean_xi1(model) < 0.0 ? theta(model) : 0.0;
  if (q == 0.0) return lo;
  double hi = lo + 1.0;
  while (model.eval(hi) < q) hi = lo + 2.0 * (hi - lo);
  auto f = [&](double u) { return model.eval(u) - q; };
  double root = bisect_increasing(f, lo, hi);
  return newton_polish(f, [&](double u) { return model.eval_derivative(u); }, root);
}

ShiftedExponent shift(const LevyModel& model, double q) {
  if (!(q >= 0.0) || !std::isfinite(q)) fail(ErrorCode::DomainError, "killing rate q must be finite and >= 0");
  if (q == 0.0) {
    if (!(mean_xi1(model) < 0.0))
      fail(ErrorCode::ConditionHViolated, "condition H violated: q=0 and E[xi_1]>=0");
    return ShiftedExponent(model, 0.0, theta(model), ShiftKind::Theta);
  }
  return ShiftedExponent(model, q, phi(model, q), ShiftKind::PhiOfQ);
}

}  // namespace expfun
