#pragma once

// Flat key-value model documents:
//
//   # comment
//   family = jumpdiff
//   b = 1
//   sigma = 2
//   lambda = 3
//   eta = 2
//   q = 2
//
// Separators '=' and ':' are both accepted. Keys outside the family's
// parameter list (and q) are rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "expfun/levy_model.hpp"

namespace expfun {

struct ModelSpec {
  LevyModel model;
  std::optional<double> q;
};

ModelSpec parse_model_text(std::string_view text);
ModelSpec load_model_file(const std::filesystem::path& path);

/// Inverse of parse_model_text, with 17 significant digits.
std::string format_model(const LevyModel& model, std::optional<double> q = std::nullopt);

}  // namespace expfun
