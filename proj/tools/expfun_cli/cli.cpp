#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "expfun/brownian_oracle.hpp"
#include "expfun/law.hpp"
#include "expfun/mc_oracle.hpp"
#include "expfun/model_file.hpp"
#include "expfun/power_series.hpp"
#include "expfun/pricing.hpp"

namespace expfun::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) fail(ErrorCode::InvalidConfig, what + ": not a number: '" + s + "'");
  return v;
}

void add_model_metadata(Table& t, const LevyModel& model) {
  t.metadata.emplace_back("family", model.family_name());
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        t.metadata.emplace_back("b", p.b);
        if constexpr (std::is_same_v<P, BrownianDrift>) {
          t.metadata.emplace_back("sigma", p.sigma);
        } else if constexpr (std::is_same_v<P, JumpDiffusion>) {
          t.metadata.emplace_back("sigma", p.sigma);
          t.metadata.emplace_back("lambda", p.lambda);
          t.metadata.emplace_back("eta", p.eta);
        } else {
          t.metadata.emplace_back("c", p.c);
          t.metadata.emplace_back("alpha", p.alpha);
        }
      },
      model.params());
}

void add_law_metadata(Table& t, const LawResult& law) {
  t.metadata.emplace_back("gamma", law.gamma);
  t.metadata.emplace_back("C_gamma", law.C_gamma);
  t.metadata.emplace_back("C_gamma_error", law.C_gamma_error);
  t.metadata.emplace_back("C_gamma_method", law.method);
  t.metadata.emplace_back("C_gamma_grid_points", static_cast<long>(law.grid_points));
}

std::vector<double> grid_or(const RunConfig& c, const char* fallback) {
  return parse_grid(c.grid.value_or(fallback)).points();
}

struct Context {
  LevyModel model;
  double q;
};

Context load(const RunConfig& c) {
  if (c.model_file.empty()) fail(ErrorCode::InvalidConfig, "--model is required");
  ModelSpec spec = load_model_file(c.model_file);
  double q = c.q ? *c.q : spec.q.value_or(0.0);
  if (!(q >= 0.0) || !std::isfinite(q)) fail(ErrorCode::InvalidParameter, "q must be finite and >= 0");
  return {spec.model, q};
}

Table cmd_psi(const RunConfig& c) {
  const LevyModel model = load(c).model;
  Table t;
  add_model_metadata(t, model);
  t.columns = {"u", "psi", "psi_prime"};
  for (double u : grid_or(c, "0:4:9")) t.rows.push_back({u, psi(model, u), psi_derivative(model, u)});
  return t;
}

Table cmd_roots(const RunConfig& c) {
  const auto [model, q] = load(c);
  Table t;
  add_model_metadata(t, model);
  t.metadata.emplace_back("q", q);
  t.columns = {"quantity", "value"};
  const double mean = mean_xi1(model);
  t.rows.push_back({std::string("mean_xi1"), mean});
  t.rows.push_back({std::string("theta"), mean < 0.0 ? theta(model) : kNaN});
  const ShiftedExponent s = shift(model, q);
  t.rows.push_back({std::string("phi_q"), phi(model, q)});
  t.rows.push_back({std::string("gamma"), s.gamma()});
  t.rows.push_back({std::string("psi_gamma_prime_0"), s.derivative_at_zero()});
  return t;
}

Table cmd_series(const RunConfig& c) {
  const auto [model, q] = load(c);
  const ShiftedExponent s = shift(model, q);
  const double kappa = c.kappa.value_or(s.gamma());
  if (!(kappa > 0.0)) fail(ErrorCode::DomainError, "kappa must be > 0");
  Table t;
  add_model_metadata(t, model);
  t.metadata.emplace_back("q", q);
  t.metadata.emplace_back("gamma", s.gamma());
  t.metadata.emplace_back("kappa", kappa);
  t.metadata.emplace_back("tol", c.tol);
  t.columns = {"z", "O", "truncation_bound", "rounding_bound", "condition", "terms", "precision_bits"};
  for (double z : grid_or(c, "0:50:11")) {
    const SeriesValue v = evaluate_O(s, kappa, z, c.tol);
    t.rows.push_back({z, v.value, v.truncation_bound, v.rounding_bound, v.condition, v.terms_used,
                      static_cast<long>(v.precision_bits)});
  }
  return t;
}

Table cmd_law(const RunConfig& c, bool density) {
  const auto [model, q] = load(c);
  const auto law = law_for(model, q, c.tol);
  Table t;
  add_model_metadata(t, model);
  t.metadata.emplace_back("q", q);
  t.metadata.emplace_back("tol", c.tol);
  add_law_metadata(t, *law);
  if (!density) {
    for (double p : c.quantiles) {
      t.metadata.emplace_back("quantile_" + format_number(p), survival_quantile(model, q, p, c.tol));
    }
  }
  t.columns = {"t", density ? "s" : "S", "error"};
  for (double x : grid_or(c, "0.25:4:5:log")) {
    const LawValue v = density ? density_value(*law, x, c.tol) : survival_value(*law, x, c.tol);
    t.rows.push_back({x, v.value, v.error});
  }
  return t;
}

Table cmd_price(const RunConfig& c) {
  const auto [model, q] = load(c);
  const double z0 = zero_strike_value(model, q);
  Table t;
  add_model_metadata(t, model);
  t.metadata.emplace_back("q", q);
  t.metadata.emplace_back("y", c.y);
  t.metadata.emplace_back("tol", c.tol);
  t.metadata.emplace_back("psi_1", psi(model, 1.0));
  t.metadata.emplace_back("zero_strike_value", z0);
  const double phi_q = phi(model, q);
  t.metadata.emplace_back("phi_q", phi_q);
  if (phi_q - 1.0 < 1e-4) {
    t.metadata.emplace_back("note", std::string("phi(q)-1 < 1e-4: error_bound inflated by 1/(phi(q)-1)"));
  }
  t.columns = {"K", "price", "error_bound"};
  for (double K : grid_or(c, "0.1:2:20")) {
    const AsianQuote a = asian_price(model, q, K, c.y, c.tol);
    t.rows.push_back({K, a.price, a.error_bound});
  }
  return t;
}

double z_score(double empirical, double analytic, double se) {
  const double d = empirical - analytic;
  if (se > 0.0) return d / se;
  return d == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), d);
}

Table validate_mc(const RunConfig& c) {
  const auto [model, q] = load(c);
  const auto law = law_for(model, q, c.tol);
  McConfig mc;
  mc.n_paths = c.paths;
  mc.dt = c.dt;
  mc.seed = c.seed;
  mc.threads = c.threads;
  const McSample sample = simulate(model, q, mc);
  if (c.samples_out) write_sample_file(*c.samples_out, sample.values);

  Table t;
  add_model_metadata(t, model);
  t.metadata.emplace_back("q", q);
  t.metadata.emplace_back("tol", c.tol);
  add_law_metadata(t, *law);
  t.metadata.emplace_back("oracle", std::string("mc"));
  t.metadata.emplace_back("paths", static_cast<long>(mc.n_paths));
  t.metadata.emplace_back("dt", mc.dt);
  t.metadata.emplace_back("seed", std::to_string(mc.seed));
  if (q == 0.0) t.metadata.emplace_back("t_cap", sample.config.t_cap);
  t.columns = {"quantity", "point", "analytic", "analytic_error", "empirical", "std_error", "z"};

  double max_z = 0.0;
  for (double x : grid_or(c, "0.25:4:5:log")) {
    const LawValue a = survival_value(*law, x, c.tol);
    const McEstimate e = empirical_survival(sample, x);
    const double z = z_score(e.estimate, a.value, e.std_error);
    max_z = std::max(max_z, std::fabs(z));
    t.rows.push_back({std::string("survival"), x, a.value, a.error, e.estimate, e.std_error, z});
  }
  if (q > psi(model, 1.0)) {
    for (double K : {0.1, 0.5, 1.0, 2.0}) {
      const AsianQuote a = asian_price(model, q, K, 0.0, c.tol);
      const McEstimate e = empirical_asian(sample, K);
      const double z = z_score(e.estimate, a.price, e.std_error);
      max_z = std::max(max_z, std::fabs(z));
      t.rows.push_back({std::string("asian"), K, a.price, a.error_bound, e.estimate, e.std_error, z});
    }
  }
  t.metadata.emplace_back("max_abs_z", max_z);
  return t;
}

Table validate_brownian(const RunConfig& c) {
  const auto [model, q] = load(c);
  if (!std::holds_alternative<BrownianDrift>(model.params()))
    fail(ErrorCode::InvalidConfig, "--oracle brownian needs a brownian model");
  const ScaledBrownianCase bc = brownian_case_for(model, q);
  const auto law = law_for(model, q, c.tol);
  Table t;
  add_model_metadata(t, model);
  t.metadata.emplace_back("q", q);
  t.metadata.emplace_back("tol", c.tol);
  add_law_metadata(t, *law);
  t.metadata.emplace_back("oracle", std::string("brownian"));
  t.columns = {"quantity", "point", "analytic", "analytic_error", "oracle", "rel_diff"};

  // Sigma(model) = k Sigma(standard), so S(t) = S'(t/k) and s(t) = s'(t/k)/k.
  const double k = bc.time_scale;
  const double c_model = closed_C(bc.standard) * std::pow(k, law->gamma);
  t.rows.push_back({std::string("C_gamma"), kNaN, law->C_gamma, law->C_gamma * law->C_gamma_error, c_model,
                    std::fabs(law->C_gamma - c_model) / c_model});
  for (double x : grid_or(c, "0.1:10:7:log")) {
    const LawValue a = density_value(*law, x, c.tol);
    const double o = yor_density(bc.standard, x / k) / k;
    t.rows.push_back({std::string("density"), x, a.value, a.error, o, std::fabs(a.value - o) / o});
  }
  return t;
}

Table cmd_validate(const RunConfig& c) {
  if (c.oracle == "mc") return validate_mc(c);
  if (c.oracle == "brownian") return validate_brownian(c);
  fail(ErrorCode::InvalidConfig, "--oracle must be mc or brownian");
}

std::string csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<V, long>) {
          return std::to_string(v);
        } else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char ch : v) {
            if (ch == '"') quoted += '"';
            quoted += ch;
          }
          return quoted + "\"";
        }
      },
      cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      cell);
}

}  // namespace

std::vector<double> Grid::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    if (count == 1) {
      out.push_back(start);
    } else if (i == count - 1) {
      out.push_back(stop);
    } else {
      const double f = static_cast<double>(i) / (count - 1);
      out.push_back(log ? start * std::pow(stop / start, f) : start + (stop - start) * f);
    }
  }
  return out;
}

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3 && parts.size() != 4)
    fail(ErrorCode::InvalidConfig, "--grid expects start:stop:count[:log], got '" + text + "'");
  Grid g;
  g.start = parse_double(parts[0], "--grid start");
  g.stop = parse_double(parts[1], "--grid stop");
  const double count = parse_double(parts[2], "--grid count");
  if (count < 1 || count > 1e6 || count != std::floor(count))
    fail(ErrorCode::InvalidConfig, "--grid count must be an integer in [1, 1e6]");
  g.count = static_cast<int>(count);
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.log = true;
    } else if (parts[3] != "lin") {
      fail(ErrorCode::InvalidConfig, "--grid spacing must be 'log' or 'lin'");
    }
  }
  if (!std::isfinite(g.start) || !std::isfinite(g.stop)) fail(ErrorCode::InvalidConfig, "--grid bounds must be finite");
  if (g.log && !(g.start > 0.0 && g.stop > 0.0)) fail(ErrorCode::InvalidConfig, "log --grid needs positive bounds");
  return g;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Table& table, std::ostream& os) {
  for (const auto& [key, value] : table.metadata) os << "# " << key << ',' << csv_cell(value) << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

void write_json(const Table& table, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) doc["metadata"][key] = json_cell(value);
  doc["columns"] = table.columns;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[table.columns[i]] = json_cell(row[i]);
    doc["records"].push_back(std::move(rec));
  }
  // nlohmann prints doubles with max_digits10, so values round-trip.
  os << doc.dump(2) << '\n';
}

Table execute(const RunConfig& c) {
  if (!(c.tol > 0.0 && c.tol < 1e-2)) fail(ErrorCode::InvalidConfig, "--tol must lie in (0, 1e-2)");
  if (c.format != "csv" && c.format != "json") fail(ErrorCode::InvalidConfig, "--format must be csv or json");
  if (c.command == "psi") return cmd_psi(c);
  if (c.command == "roots") return cmd_roots(c);
  if (c.command == "series") return cmd_series(c);
  if (c.command == "cdf") return cmd_law(c, false);
  if (c.command == "pdf") return cmd_law(c, true);
  if (c.command == "price") return cmd_price(c);
  if (c.command == "validate") return cmd_validate(c);
  fail(ErrorCode::InvalidConfig, "unknown command '" + c.command + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Table table = execute(config);
    std::ostringstream buf;
    if (config.format == "json") {
      write_json(table, buf);
    } else {
      write_csv(table, buf);
    }
    if (config.out) {
      std::ofstream file(*config.out, std::ios::binary | std::ios::trunc);
      if (!file) fail(ErrorCode::InvalidConfig, "cannot open " + config.out->string() + " for writing");
      file << buf.str();
      if (!file) fail(ErrorCode::InvalidConfig, "failed writing " + config.out->string());
    } else {
      out << buf.str();
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return is_precondition(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Law and Asian prices of exponential functionals of spectrally negative Levy processes"};
  app.require_subcommand(1);
  RunConfig config;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--model", config.model_file, "Model file (key = value lines)")->required();
    sub->add_option("--q", config.q, "Killing rate q >= 0 (overrides the model file)");
    sub->add_option("--tol", config.tol, "Relative tolerance")->capture_default_str();
    sub->add_option("--out", config.out, "Output path (default stdout)");
    sub->add_option("--format", config.format, "csv or json")->capture_default_str();
  };
  auto with_grid = [&](CLI::App* sub, const char* what) {
    sub->add_option("--grid", config.grid, std::string("Grid of ") + what + " as start:stop:count[:log]");
  };

  struct Sub {
    const char* name;
    const char* help;
    const char* grid;
  };
  for (const Sub s : {Sub{"psi", "Tabulate psi and psi'", "u"}, Sub{"roots", "theta, phi(q), gamma, psi_gamma'(0)", nullptr},
                      Sub{"series", "Tabulate O(kappa; z) with condition numbers", "z"},
                      Sub{"cdf", "Tabulate the survival function S(t)", "t"},
                      Sub{"pdf", "Tabulate the density s(t)", "t"},
                      Sub{"price", "Tabulate Asian prices over strikes", "K"},
                      Sub{"validate", "Compare the law with an oracle", "t"}}) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    if (s.grid) with_grid(sub, s.grid);
    const std::string name = s.name;
    sub->callback([&config, name] { config.command = name; });
    if (name == "series") sub->add_option("--kappa", config.kappa, "Series parameter kappa (default gamma)");
    if (name == "cdf") sub->add_option("--quantile", config.quantiles, "Survival levels p to invert (S(t) = p)");
    if (name == "price") sub->add_option("--y", config.y, "Initial log-price")->capture_default_str();
    if (name == "validate") {
      sub->add_option("--paths", config.paths, "Monte Carlo paths")->capture_default_str()->check(CLI::PositiveNumber);
      sub->add_option("--dt", config.dt, "Time step")->capture_default_str();
      sub->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
      sub->add_option("--threads", config.threads, "Worker threads (0 = all cores)")->capture_default_str();
      sub->add_option("--oracle", config.oracle, "mc or brownian")->capture_default_str();
      sub->add_option("--samples-out", config.samples_out, "Write the raw sample as an EXPF binary file");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  return run(config, out, err);
}

}  // namespace expfun::cli
