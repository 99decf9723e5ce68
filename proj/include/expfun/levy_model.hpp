#pragma once

// Spectrally negative Levy processes of unbounded variation, described by
// their Laplace exponent psi(u) = log E[exp(u xi_1)], u >= 0.

#include <cmath>
#include <string>
#include <variant>

#include "expfun/bigfloat.hpp"
#include "expfun/errors.hpp"

namespace expfun {

/// psi(u) = b u + (sigma/2) u^2.
struct BrownianDrift {
  double b = 0.0;
  double sigma = 0.0;
};

/// psi(u) = b u + (sigma/2) u^2 + lambda (eta/(eta+u) - 1): Brownian motion plus
/// negative exponential jumps of mean 1/eta at rate lambda. b is the effective
/// (uncompensated) drift.
struct JumpDiffusion {
  double b = 0.0;
  double sigma = 0.0;
  double lambda = 0.0;
  double eta = 0.0;
};

/// psi(u) = b u + c u^alpha, 1 < alpha <= 2 (spectrally negative stable plus drift).
struct StableDrift {
  double b = 0.0;
  double c = 0.0;
  double alpha = 0.0;
};

using FamilyParams = std::variant<BrownianDrift, JumpDiffusion, StableDrift>;

class LevyModel {
 public:
  /// Validates the parameters; throws InvalidParameter or UnboundedVariationViolated.
  explicit LevyModel(const FamilyParams& params);

  const FamilyParams& params() const noexcept { return params_; }
  double drift() const noexcept;
  std::string family_name() const;
  std::string describe() const;

  /// Closed-form exponent. No domain check, so that shifted evaluations and
  /// extended-precision kernels can call it directly.
  template <class Real>
  Real eval(const Real& u) const;

  template <class Real>
  Real eval_derivative(const Real& u) const;

  friend bool operator==(const LevyModel& a, const LevyModel& b);

 private:
  FamilyParams params_;
};

LevyModel build_model(const FamilyParams& params);

/// Returns the same family with the drift replaced.
FamilyParams with_drift(const FamilyParams& params, double b);

double psi(const LevyModel& model, double u);
double psi_derivative(const LevyModel& model, double u);
double mean_xi1(const LevyModel& model);

/// Positive root of psi; requires E[xi_1] < 0.
double theta(const LevyModel& model);

/// Increasing inverse of psi on [max(theta,0), inf).
double phi(const LevyModel& model, double q);

enum class ShiftKind { Theta, PhiOfQ };

/// Evaluates psi(u + gamma) - q with gamma held at the scalar's precision.
template <class Real>
struct ShiftedEvaluator {
  const LevyModel* model;
  Real gamma;
  Real q;

  Real operator()(const Real& u) const { return model->eval(u + gamma) - q; }
  Real operator()(long n) const { return model->eval(Real(n) + gamma) - q; }
};

/// The conservative exponent psi_gamma(u) = psi(u + gamma) - q, where gamma is
/// phi(q) when q > 0 and theta when q = 0.
class ShiftedExponent {
 public:
  ShiftedExponent(LevyModel base, double q, double gamma, ShiftKind kind)
      : base_(std::move(base)), q_(q), gamma_(gamma), kind_(kind) {}

  const LevyModel& base() const noexcept { return base_; }
  double q() const noexcept { return q_; }
  double gamma() const noexcept { return gamma_; }
  ShiftKind kind() const noexcept { return kind_; }

  double operator()(double u) const { return base_.eval(u + gamma_) - q_; }
  double derivative_at_zero() const { return base_.eval_derivative(gamma_); }

  /// Evaluator at the precision of Real. For BigFloat, gamma is re-solved by
  /// Newton iteration at the current working precision.
  template <class Real>
  ShiftedEvaluator<Real> evaluator() const;

 private:
  LevyModel base_;
  double q_;
  double gamma_;
  ShiftKind kind_;
};

/// Requires condition H: q > 0, or q = 0 with E[xi_1] < 0.
ShiftedExponent shift(const LevyModel& model, double q);

// ---------------------------------------------------------------------------

template <class Real>
Real LevyModel::eval(const Real& u) const {
  using std::pow;
  return std::visit(
      [&](const auto& p) -> Real {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BrownianDrift>) {
          return u * (p.b + (0.5 * p.sigma) * u);
        } else if constexpr (std::is_same_v<P, JumpDiffusion>) {
          Real diffusive = u * (p.b + (0.5 * p.sigma) * u);
          // lambda (eta/(eta+u) - 1) = -lambda u / (eta + u)
          return diffusive - p.lambda * u / (u + p.eta);
        } else {
          using std::sqrt;
          if (p.alpha == 2.0) return u * (p.b + p.c * u);
          // pow at thousands of bits costs a log and an exp; sqrt is far cheaper.
          if (p.alpha == 1.5) return u * (p.b + p.c * sqrt(u));
          return p.b * u + p.c * pow(u, p.alpha);
        }
      },
      params_);
}

template <class Real>
Real LevyModel::eval_derivative(const Real& u) const {
  using std::pow;
  return std::visit(
      [&](const auto& p) -> Real {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BrownianDrift>) {
          return p.b + p.sigma * u;
        } else if constexpr (std::is_same_v<P, JumpDiffusion>) {
          Real denom = u + p.eta;
          return p.b + p.sigma * u - p.lambda * p.eta / (denom * denom);
        } else {
          if (p.alpha == 2.0) return p.b + 2.0 * p.c * u;
          if (u == 0.0) return Real(p.b);
          using std::sqrt;
          if (p.alpha == 1.5) return p.b + (1.5 * p.c) * sqrt(u);
          return p.b + (p.c * p.alpha) * pow(u, p.alpha - 1.0);
        }
      },
      params_);
}

template <>
inline ShiftedEvaluator<double> ShiftedExponent::evaluator<double>() const {
  return {&base_, gamma_, q_};
}

template <>
inline ShiftedEvaluator<BigFloat> ShiftedExponent::evaluator<BigFloat>() const {
  BigFloat g(gamma_);
  BigFloat q(q_);
  const double tol_log2 = -static_cast<double>(working_precision()) + 2.0;
  for (int it = 0; it < 64; ++it) {
    BigFloat step = (base_.eval(g) - q) / base_.eval_derivative(g);
    g -= step;
    if (step.is_zero() || log_abs(step) - log_abs(g) < tol_log2 * 0.69314718055994530942) break;
  }
  return {&base_, std::move(g), std::move(q)};
}

}  // namespace expfun
