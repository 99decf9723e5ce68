#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace expfun::cli {

struct RunConfig {
  std::string command;
  std::filesystem::path model_file;
  std::optional<double> q;
  std::optional<std::string> grid;
  std::optional<double> kappa;
  double tol = 1e-10;
  std::size_t paths = 100000;
  double dt = 1e-3;
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> out;
  std::string format = "csv";
  unsigned threads = 0;
  /// validate: "mc" or "brownian".
  std::string oracle = "mc";
  /// price: initial log-price.
  double y = 0.0;
  /// cdf: survival levels to invert.
  std::vector<double> quantiles;
  /// validate: also write the raw Monte Carlo sample here.
  std::optional<std::filesystem::path> samples_out;
};

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log = false;

  std::vector<double> points() const;
};

Grid parse_grid(const std::string& text);

using Cell = std::variant<double, long, std::string>;

struct Table {
  std::vector<std::pair<std::string, Cell>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v);
void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);

/// Builds the table for config; throws expfun::Error.
Table execute(const RunConfig& config);

/// Runs config, writing the table to config.out or to `out`, diagnostics to
/// `err`. Returns 0, 2 (precondition failure) or 3 (numerical failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace expfun::cli
