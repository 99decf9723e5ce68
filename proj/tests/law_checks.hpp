#pragma once

// Distribution-function checks shared by the unit and acceptance suites.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "expfun/law.hpp"

namespace expfun {

struct Normalization {
  double head = 0.0;
  double middle = 0.0;
  double tail = 0.0;
  double middle_error = 0.0;

  double total() const { return head + middle + tail; }
};

// int_0^inf s = head + middle + tail. The head [0, a] integrates the quartic
// through s(0+) = q and s(a/4), ..., s(a); the middle [a, T] runs Gauss-Kronrod
// in log t; the tail is S(T).
inline Normalization normalization(const LevyModel& model, double q, double rel_tol, double a = 1e-3,
                                   double T = 100.0) {
  const auto law = law_for(model, q, rel_tol);
  auto s = [&](double t) { return density_value(*law, t, rel_tol).value; };
  Normalization out;

  // Boole's rule on 5 equispaced nodes is exact for the quartic interpolant.
  const double f0 = q;
  const double f1 = s(0.25 * a), f2 = s(0.5 * a), f3 = s(0.75 * a), f4 = s(a);
  out.head = a / 90.0 * (7.0 * f0 + 32.0 * f1 + 12.0 * f2 + 32.0 * f3 + 7.0 * f4);

  auto g = [&](double v) {
    const double t = std::exp(v);
    return s(t) * t;
  };
  out.middle = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, std::log(a), std::log(T), 15, 1e-12,
                                                                            &out.middle_error);
  out.tail = survival_value(*law, T, rel_tol).value;
  return out;
}

struct AxiomReport {
  bool monotone = true;
  bool in_unit_interval = true;
  bool density_nonnegative = true;
  double max_fd_rel_error = 0.0;
};

// S nonincreasing and in [0,1], s >= 0 on the grid, and the worst relative gap
// between -(S(t+h) - S(t-h))/(2h) and s(t) on fd_points.
inline AxiomReport check_axioms(const LevyModel& model, double q, double rel_tol, const std::vector<double>& grid,
                                const std::vector<double>& fd_points, double h = 1e-4) {
  const auto law = law_for(model, q, rel_tol);
  AxiomReport r;
  double prev = 2.0;
  for (double t : grid) {
    const double S = survival_value(*law, t, rel_tol).value;
    const double s = density_value(*law, t, rel_tol).value;
    if (S > prev) r.monotone = false;
    if (S < 0.0 || S > 1.0) r.in_unit_interval = false;
    if (s < 0.0) r.density_nonnegative = false;
    prev = S;
  }
  for (double t : fd_points) {
    const double fd = -(survival_value(*law, t + h, rel_tol).value - survival_value(*law, t - h, rel_tol).value) / (2 * h);
    const double s = density_value(*law, t, rel_tol).value;
    r.max_fd_rel_error = std::max(r.max_fd_rel_error, std::fabs(fd - s) / s);
  }
  return r;
}

}  // namespace expfun
