#pragma once

// Seeded Monte Carlo for Sigma_{e_q} = int_0^{e_q} exp(xi_s) ds.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "expfun/levy_model.hpp"

namespace expfun {

struct McConfig {
  std::size_t n_paths = 100000;
  double dt = 1e-3;
  std::uint64_t seed = 42;
  /// Integration horizon when q = 0; 0 selects default_t_cap().
  double t_cap = 0.0;
  /// Worker threads; 0 uses the hardware concurrency. Output does not depend on it.
  unsigned threads = 0;
  /// Increments are drawn on the dt grid but the trapezoid only uses every
  /// coarsen-th grid point (plus jump times and the horizon). Runs with
  /// (dt, coarsen = 2) and (dt, coarsen = 1) share their paths, which makes
  /// the step-halving comparison a paired one.
  int coarsen = 1;
};

struct McSample {
  std::vector<double> values;
  McConfig config;
  LevyModel model;
  double q = 0.0;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Horizon with exp(psi(theta/2) t_cap) = 1e-4 for q = 0 runs.
double default_t_cap(const LevyModel& model);

McSample simulate(const LevyModel& model, double q, const McConfig& config);

/// Fraction of values >= t.
McEstimate empirical_survival(const McSample& sample, double t);

/// Mean of (value - K)^+.
McEstimate empirical_asian(const McSample& sample, double K);

/// Order-fixed pairwise summation.
double pairwise_sum(std::span<const double> xs);

/// Binary column file: "EXPF", u32 version, u64 count, then little-endian f64.
void write_sample_file(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_sample_file(const std::filesystem::path& path);

inline constexpr std::uint32_t kSampleFileVersion = 1;

}  // namespace expfun
