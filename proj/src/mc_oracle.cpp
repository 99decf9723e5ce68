#include "expfun/mc_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <thread>

#include "expfun/philox.hpp"

namespace expfun {

namespace {

// Chambers-Mallows-Stuck draw of a totally skewed to the left (beta = -1)
// alpha-stable variable with E[exp(u X)] = exp(u^alpha / |cos(pi alpha/2)|).
struct StableSampler {
  double alpha;
  double b_shift;
  double s_factor;

  explicit StableSampler(double a) : alpha(a) {
    const double tan_term = std::tan(0.5 * std::numbers::pi * a);
    b_shift = std::atan(-tan_term) / a;
    s_factor = std::pow(1.0 + tan_term * tan_term, 1.0 / (2.0 * a));
  }

  double operator()(PathRng& rng) const {
    const double v = std::numbers::pi * (rng.uniform() - 0.5);
    const double w = rng.exponential();
    const double av = alpha * (v + b_shift);
    return s_factor * std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
  }
};

// Continuous part of one increment of length h.
class IncrementDraw {
 public:
  explicit IncrementDraw(const LevyModel& model) {
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          b_ = p.b;
          if constexpr (std::is_same_v<P, BrownianDrift>) {
            sigma_ = p.sigma;
          } else if constexpr (std::is_same_v<P, JumpDiffusion>) {
            sigma_ = p.sigma;
            lambda_ = p.lambda;
            eta_ = p.eta;
          } else if (p.alpha == 2.0) {
            sigma_ = 2.0 * p.c;  // psi = c u^2 means variance 2c per unit time
          } else {
            stable_ = true;
            alpha_ = p.alpha;
            stable_scale_ = std::pow(p.c * std::fabs(std::cos(0.5 * std::numbers::pi * p.alpha)), 1.0 / p.alpha);
          }
        },
        model.params());
    if (stable_) sampler_ = StableSampler(alpha_);
  }

  double operator()(PathRng& rng, double h) const {
    if (stable_) return b_ * h + stable_scale_ * std::pow(h, 1.0 / alpha_) * sampler_(rng);
    return b_ * h + std::sqrt(sigma_ * h) * rng.normal();
  }

  bool has_jumps() const { return lambda_ > 0.0; }
  double lambda() const { return lambda_; }
  double eta() const { return eta_; }

 private:
  double b_ = 0.0;
  double sigma_ = 0.0;
  double lambda_ = 0.0;
  double eta_ = 0.0;
  bool stable_ = false;
  double alpha_ = 2.0;
  double stable_scale_ = 0.0;
  StableSampler sampler_{1.5};
};

// Trapezoidal integral of exp(xi) over [0, T] on the dt grid, with jump times
// inserted as extra grid points.
double simulate_path(const IncrementDraw& draw, double q, double dt, int coarsen, double t_cap, PathRng& rng) {
  const double horizon = q > 0.0 ? rng.exponential() / q : t_cap;
  double x = 0.0;
  double s = 0.0;
  double node_s = 0.0;
  double node_e = 1.0;
  double integral = 0.0;
  double next_jump = draw.has_jumps() ? rng.exponential() / draw.lambda() : std::numeric_limits<double>::infinity();
  long k = 0;
  while (s < horizon) {
    const double next_grid = static_cast<double>(k + 1) * dt;
    double stop = std::min(next_grid, horizon);
    const bool jump = next_jump < stop;
    if (jump) stop = next_jump;
    x += draw(rng, stop - s);
    s = stop;
    bool node = jump || s >= horizon;
    if (!jump && stop == next_grid) {
      ++k;
      node = node || k % coarsen == 0;
    }
    if (node) {
      const double e = std::exp(x);
      integral += 0.5 * (s - node_s) * (node_e + e);
      node_s = s;
      node_e = e;
    }
    if (jump) {
      x -= rng.exponential() / draw.eta();
      node_e = std::exp(x);
      next_jump = s + rng.exponential() / draw.lambda();
    }
  }
  return integral;
}

void write_le(std::ofstream& out, const void* data, std::size_t n) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  } else {
    const auto* bytes = static_cast<const char*>(data);
    for (std::size_t i = n; i-- > 0;) out.put(bytes[i]);
  }
}

template <class T>
T read_le(std::ifstream& in) {
  char bytes[sizeof(T)];
  in.read(bytes, sizeof(T));
  if (!in) fail(ErrorCode::InvalidConfig, "truncated sample file");
  if constexpr (std::endian::native != std::endian::little) std::reverse(bytes, bytes + sizeof(T));
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

}  // namespace

double default_t_cap(const LevyModel& model) {
  const double half_theta = 0.5 * theta(model);
  const double rate = -model.eval(half_theta);
  return std::log(1e4) / rate;
}

McSample simulate(const LevyModel& model, double q, const McConfig& config) {
  if (config.n_paths < 1) fail(ErrorCode::InvalidConfig, "n_paths must be >= 1");
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) fail(ErrorCode::InvalidConfig, "dt must be finite and > 0");
  if (config.coarsen < 1) fail(ErrorCode::InvalidConfig, "coarsen must be >= 1");
  if (!(q >= 0.0) || !std::isfinite(q)) fail(ErrorCode::InvalidConfig, "q must be finite and >= 0");
  McConfig cfg = config;
  if (q == 0.0) {
    if (!(mean_xi1(model) < 0.0))
      fail(ErrorCode::ConditionHViolated, "condition H violated: q=0 and E[xi_1]>=0");
    if (cfg.t_cap == 0.0) cfg.t_cap = default_t_cap(model);
    if (!(cfg.t_cap > 0.0) || !std::isfinite(cfg.t_cap)) fail(ErrorCode::InvalidConfig, "t_cap must be finite and > 0");
  }

  const IncrementDraw draw(model);
  std::vector<double> values(cfg.n_paths);
  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.n_paths));

  constexpr std::size_t kChunk = 256;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= cfg.n_paths) return;
      const std::size_t end = std::min(begin + kChunk, cfg.n_paths);
      for (std::size_t i = begin; i < end; ++i) {
        PathRng rng(cfg.seed, i);
        values[i] = simulate_path(draw, q, cfg.dt, cfg.coarsen, cfg.t_cap, rng);
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return McSample{std::move(values), cfg, model, q};
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 16) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

McEstimate empirical_survival(const McSample& sample, double t) {
  const auto n = static_cast<double>(sample.values.size());
  if (n == 0) fail(ErrorCode::InvalidConfig, "empty sample");
  const auto hits = std::count_if(sample.values.begin(), sample.values.end(), [t](double v) { return v >= t; });
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

McEstimate empirical_asian(const McSample& sample, double K) {
  const std::size_t n = sample.values.size();
  if (n == 0) fail(ErrorCode::InvalidConfig, "empty sample");
  std::vector<double> payoff(n);
  std::transform(sample.values.begin(), sample.values.end(), payoff.begin(),
                 [K](double v) { return std::max(v - K, 0.0); });
  const double mean = pairwise_sum(payoff) / static_cast<double>(n);
  for (double& p : payoff) p = (p - mean) * (p - mean);
  const double var = n > 1 ? pairwise_sum(payoff) / static_cast<double>(n - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

void write_sample_file(const std::filesystem::path& path, std::span<const double> values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::InvalidConfig, "cannot open " + path.string() + " for writing");
  out.write("EXPF", 4);
  const std::uint32_t version = kSampleFileVersion;
  const std::uint64_t count = values.size();
  write_le(out, &version, sizeof version);
  write_le(out, &count, sizeof count);
  for (double v : values) write_le(out, &v, sizeof v);
  if (!out) fail(ErrorCode::InvalidConfig, "failed writing " + path.string());
}

std::vector<double> read_sample_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidConfig, "cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "EXPF", 4) != 0) fail(ErrorCode::InvalidConfig, "not an EXPF sample file");
  const auto version = read_le<std::uint32_t>(in);
  if (version != kSampleFileVersion) fail(ErrorCode::InvalidConfig, "unsupported sample file version");
  const auto count = read_le<std::uint64_t>(in);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 26)));
  for (std::uint64_t i = 0; i < count; ++i) values.push_back(read_le<double>(in));
  return values;
}

}  // namespace expfun
