#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "expfun/errors.hpp"
#include "expfun/levy_model.hpp"

namespace expfun {

inline std::optional<ErrorCode> error_code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

inline std::vector<LevyModel> standard_models() {
  return {
      LevyModel(BrownianDrift{0.0, 4.0}),
      LevyModel(BrownianDrift{-2.0, 4.0}),
      LevyModel(BrownianDrift{1.5, 0.5}),
      LevyModel(JumpDiffusion{1.0, 2.0, 3.0, 2.0}),
      LevyModel(JumpDiffusion{1.0, 2.0, 4.0, 2.0}),
      LevyModel(StableDrift{0.0, 1.0, 1.5}),
      LevyModel(StableDrift{-1.0, 1.0, 1.5}),
      LevyModel(StableDrift{-1.0, 1.0, 2.0}),
  };
}

inline double rel_diff(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

}  // namespace expfun
