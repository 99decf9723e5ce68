#include <doctest.h>

#include "expfun/model_file.hpp"
#include "support.hpp"

using namespace expfun;

TEST_CASE("model text with comments and both separators") {
  const ModelSpec spec = parse_model_text(
      "# jump diffusion\n"
      "family = jumpdiff\n"
      "b: 1\n"
      "sigma = 2   # diffusion\n"
      "\n"
      "lambda=3\n"
      "eta = 2\n"
      "q = 2\n");
  CHECK(spec.model == LevyModel(JumpDiffusion{1.0, 2.0, 3.0, 2.0}));
  REQUIRE(spec.q.has_value());
  CHECK(*spec.q == 2.0);
}

TEST_CASE("drift and q are optional") {
  const ModelSpec spec = parse_model_text("family=stable\nc=1\nalpha=1.5\n");
  CHECK(spec.model == LevyModel(StableDrift{0.0, 1.0, 1.5}));
  CHECK_FALSE(spec.q.has_value());
}

TEST_CASE("malformed model documents") {
  auto code = [](const char* text) { return error_code_of([&] { parse_model_text(text); }); };
  CHECK(code("family=brownian\nsigma=4\nkappa=1\n") == ErrorCode::InvalidConfig);
  CHECK(code("family=brownian\nsigma=4\nalpha=1.5\n") == ErrorCode::InvalidConfig);
  CHECK(code("sigma=4\n") == ErrorCode::InvalidConfig);
  CHECK(code("family=levy\nsigma=4\n") == ErrorCode::InvalidConfig);
  CHECK(code("family=brownian\nsigma=four\n") == ErrorCode::InvalidConfig);
  CHECK(code("family=brownian\nsigma=4\nsigma=2\n") == ErrorCode::InvalidConfig);
  CHECK(code("family=brownian\nsigma 4\n") == ErrorCode::InvalidConfig);
  CHECK(code("family=jumpdiff\nsigma=2\nlambda=3\n") == ErrorCode::InvalidConfig);
  CHECK(code("family=brownian\nsigma=4\nq=-1\n") == ErrorCode::InvalidParameter);
  CHECK(code("family=brownian\nsigma=0\n") == ErrorCode::UnboundedVariationViolated);
}

TEST_CASE("format_model round-trips bit-exactly") {
  for (const auto& m : standard_models()) {
    const ModelSpec back = parse_model_text(format_model(m, 0.1 + 0.2));
    CHECK(back.model == m);
    CHECK(*back.q == 0.1 + 0.2);
  }
}

TEST_CASE("model files on disk") {
  const ModelSpec spec = load_model_file(EXPFUN_TEST_DATA "/brownian_b0_q2.model");
  CHECK(spec.model == LevyModel(BrownianDrift{0.0, 4.0}));
  CHECK(*spec.q == 2.0);
  CHECK(error_code_of([] { load_model_file(EXPFUN_TEST_DATA "/missing.model"); }) == ErrorCode::InvalidConfig);
}
