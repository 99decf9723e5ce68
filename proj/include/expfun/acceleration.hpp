#pragma once

// Limits of slowly converging sequences sampled on a geometric grid.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace expfun {

template <class Real>
struct Extrapolated {
  Real value{};
  /// Self-reported absolute error.
  Real error{};
  /// Richardson order used (number of eliminated powers), or Aitken passes.
  int order = 0;
};

/// Polynomial extrapolation to h -> 0 of values[i] = f(h[i]) (Neville table).
/// Assumes f(h) = f(0) + c_1 h + c_2 h^2 + ...; the order with the smallest
/// difference to its predecessor along the last row is returned, and that
/// difference is the error estimate.
template <class Real>
Extrapolated<Real> richardson(std::span<const Real> h, std::span<const Real> values) {
  const std::size_t n = values.size();
  Extrapolated<Real> out;
  if (n == 0) return out;
  std::vector<std::vector<Real>> table(n, std::vector<Real>(n));
  for (std::size_t i = 0; i < n; ++i) table[i][0] = values[i];
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = k; i < n; ++i)
      table[i][k] = (table[i][k - 1] * h[i - k] - table[i - 1][k - 1] * h[i]) / (h[i - k] - h[i]);

  const std::size_t last = n - 1;
  out.value = table[last][0];
  out.error = n > 1 ? std::fabs(table[last][0] - table[last - 1][0]) : std::numeric_limits<Real>::infinity();
  for (std::size_t k = 1; k < n; ++k) {
    // Both the change along the row and the change down the column must be small.
    Real err = std::fabs(table[last][k] - table[last][k - 1]);
    if (k < last) err = std::max(err, std::fabs(table[last][k] - table[last - 1][k]));
    if (err < out.error) {
      out.value = table[last][k];
      out.error = err;
      out.order = static_cast<int>(k);
    }
  }
  return out;
}

/// One Aitken delta-squared pass; returns a sequence two elements shorter.
template <class Real>
std::vector<Real> aitken_pass(std::span<const Real> s) {
  std::vector<Real> out;
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    const Real d1 = s[i + 1] - s[i];
    const Real d2 = s[i + 2] - s[i + 1];
    const Real denom = d2 - d1;
    out.push_back(denom != Real(0) ? s[i + 2] - d2 * d2 / denom : s[i + 2]);
  }
  return out;
}

/// Iterated Aitken delta-squared. Makes no assumption on the convergence rate;
/// the error estimate is the last difference of the final pass.
template <class Real>
Extrapolated<Real> iterated_aitken(std::span<const Real> values) {
  std::vector<Real> s(values.begin(), values.end());
  Extrapolated<Real> out;
  if (s.empty()) return out;
  int passes = 0;
  while (s.size() >= 3) {
    auto next = aitken_pass<Real>(s);
    if (next.size() < 2) {
      // A single value carries no error information; keep the longer sequence.
      if (next.size() == 1 && s.size() >= 2) {
        out.value = next.back();
        out.error = std::fabs(next.back() - s.back());
        out.order = passes + 1;
        return out;
      }
      break;
    }
    s = std::move(next);
    ++passes;
  }
  out.value = s.back();
  out.error = s.size() >= 2 ? std::fabs(s[s.size() - 1] - s[s.size() - 2]) : std::numeric_limits<Real>::infinity();
  out.order = passes;
  return out;
}

}  // namespace expfun
