#include "expfun/model_file.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace expfun {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    fail(ErrorCode::InvalidConfig, "model key '" + std::string(key) + "': not a finite number: '" + std::string(text) + "'");
  return v;
}

const std::set<std::string>& allowed_keys(const std::string& family) {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"brownian", {"b", "sigma"}},
      {"jumpdiff", {"b", "sigma", "lambda", "eta"}},
      {"stable", {"b", "c", "alpha"}},
  };
  const auto it = keys.find(family);
  if (it == keys.end())
    fail(ErrorCode::InvalidConfig, "unknown family '" + family + "' (expected brownian, jumpdiff or stable)");
  return it->second;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ModelSpec parse_model_text(std::string_view text) {
  std::optional<std::string> family;
  std::map<std::string, double> values;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto sep = line.find_first_of("=:");
    if (sep == std::string_view::npos)
      fail(ErrorCode::InvalidConfig, "model line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, sep)));
    const std::string_view value = trim(line.substr(sep + 1));
    if (key == "family") {
      if (family) fail(ErrorCode::InvalidConfig, "duplicate model key 'family'");
      family = std::string(value);
      continue;
    }
    static const std::set<std::string> known = {"b", "sigma", "lambda", "eta", "c", "alpha", "q"};
    if (!known.contains(key)) fail(ErrorCode::InvalidConfig, "unknown model key '" + key + "'");
    if (values.contains(key)) fail(ErrorCode::InvalidConfig, "duplicate model key '" + key + "'");
    values[key] = parse_real(key, value);
  }
  if (!family) fail(ErrorCode::InvalidConfig, "model is missing 'family'");
  const auto& allowed = allowed_keys(*family);
  for (const auto& [key, v] : values) {
    if (key != "q" && !allowed.contains(key))
      fail(ErrorCode::InvalidConfig, "model key '" + key + "' does not apply to family '" + *family + "'");
  }
  for (const auto& key : allowed) {
    if (key != "b" && !values.contains(key))
      fail(ErrorCode::InvalidConfig, "model is missing '" + key + "' for family '" + *family + "'");
  }
  auto get = [&](const char* k) { return values.contains(k) ? values.at(k) : 0.0; };

  FamilyParams params;
  if (*family == "brownian") {
    params = BrownianDrift{get("b"), get("sigma")};
  } else if (*family == "jumpdiff") {
    params = JumpDiffusion{get("b"), get("sigma"), get("lambda"), get("eta")};
  } else {
    params = StableDrift{get("b"), get("c"), get("alpha")};
  }
  ModelSpec spec{LevyModel(params), std::nullopt};
  if (values.contains("q")) {
    const double q = values.at("q");
    if (q < 0.0) fail(ErrorCode::InvalidParameter, "q must be >= 0");
    spec.q = q;
  }
  return spec;
}

ModelSpec load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidConfig, "cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_text(buf.str());
}

std::string format_model(const LevyModel& model, std::optional<double> q) {
  std::string out = "family = " + model.family_name() + "\n";
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        out += "b = " + fmt(p.b) + "\n";
        if constexpr (std::is_same_v<P, BrownianDrift>) {
          out += "sigma = " + fmt(p.sigma) + "\n";
        } else if constexpr (std::is_same_v<P, JumpDiffusion>) {
          out += "sigma = " + fmt(p.sigma) + "\nlambda = " + fmt(p.lambda) + "\neta = " + fmt(p.eta) + "\n";
        } else {
          out += "c = " + fmt(p.c) + "\nalpha = " + fmt(p.alpha) + "\n";
        }
      },
      model.params());
  if (q) out += "q = " + fmt(*q) + "\n";
  return out;
}

}  // namespace expfun
