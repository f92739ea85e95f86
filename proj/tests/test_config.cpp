#include <doctest.h>

#include <cmath>

#include "floqreset/config.hpp"

using namespace floqreset;

namespace {

RawConfig xy_fig2() {
  return {{"model", "XY"}, {"J", "1"}, {"kappa", "0.7"}, {"lambda0", "10"}, {"omega_ratio", "0.8"}, {"r", "0.4"}};
}

ErrorCode code_of(const RawConfig& raw) {
  try {
    validate_config(raw);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected validate_config to throw");
  return ErrorCode::InvalidValue;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("xy configuration derives period and reset probability") {
  const ValidatedConfig c = validate_config(xy_fig2());
  CHECK(c.model == Model::XY);
  CHECK(c.period() == doctest::Approx(2.0 * std::numbers::pi / 8.0).epsilon(1e-15));
  CHECK(c.reset_probability() == doctest::Approx(1.0 - std::exp(-0.4 * c.period())).epsilon(1e-14));
  CHECK(c.alpha() == doctest::Approx(10.0 * c.period() / 2.0));
  CHECK(c.units().rate_label() == "[J/hbar]");
}

TEST_CASE("rejections carry the right error code") {
  auto raw = xy_fig2();
  raw["lambda0"] = "0";
  CHECK(code_of(raw) == ErrorCode::NonPositiveAmplitude);

  RawConfig pxp{{"model", "PXP"}, {"L", "7"}, {"lambda0", "10"}, {"omega_ratio", "0.5"}};
  CHECK(code_of(pxp) == ErrorCode::OddChainLength);

  raw = xy_fig2();
  raw["r"] = "-0.1";
  CHECK(code_of(raw) == ErrorCode::NegativeRate);

  raw = xy_fig2();
  raw.erase("kappa");
  CHECK(code_of(raw) == ErrorCode::MissingKey);

  raw = xy_fig2();
  raw["colour"] = "blue";
  CHECK(code_of(raw) == ErrorCode::UnknownKey);

  raw = xy_fig2();
  raw["kappa"] = "seven";
  CHECK(code_of(raw) == ErrorCode::InvalidValue);

  raw = xy_fig2();
  raw["l"] = "3";
  CHECK(code_of(raw) == ErrorCode::UnsupportedSeparation);
}

TEST_CASE("validate, serialize, validate is idempotent") {
  const std::vector<RawConfig> inputs = {
      xy_fig2(),
      {{"model", "XY"}, {"kappa", "-0.3"}, {"lambda0", "7.5"}, {"omega_D", "3.3"}, {"L", "64"},
       {"r_grid", "0+log:1e-3:10:12"}, {"omega_ratio_grid", "lin:0.4:1.2:9"}, {"tolerance", "1e-10"}},
      {{"model", "PXP"}, {"w", "1"}, {"L", "12"}, {"lambda0", "10"}, {"omega_ratio", "0.5075"},
       {"window", "11:30"}, {"dressing", "projected"}, {"lambda0_grid", "5,10,15"}},
  };
  for (const auto& raw : inputs) {
    const ValidatedConfig a = validate_config(raw);
    const ValidatedConfig b = validate_config(serialize_config(a));
    CHECK(a == b);
    CHECK(b.period() == a.period());
    CHECK(b.reset_probability() == a.reset_probability());
    CHECK(serialize_config(b) == serialize_config(a));
  }
}

TEST_CASE("reset probability is zero at r = 0 and increases with r") {
  ResetSpec s;
  CHECK(s.probability(0.7) == 0.0);
  double prev = 0.0;
  for (double r = 1e-6; r < 30.0; r *= 1.7) {
    s.r = r;
    const double p = s.probability(0.7);
    CHECK(p > prev);
    CHECK(p < 1.0);
    prev = p;
  }
  s.r = 1e4;
  CHECK(s.probability(0.7) == doctest::Approx(1.0));
}

TEST_CASE("grid syntax") {
  CHECK(parse_grid("1,2.5,4") == std::vector<double>{1.0, 2.5, 4.0});
  const auto lin = parse_grid("lin:0:1:5");
  REQUIRE(lin.size() == 5);
  CHECK(lin[2] == doctest::Approx(0.5));
  const auto lg = parse_grid("0+log:1e-3:10:5");
  REQUIRE(lg.size() == 6);
  CHECK(lg[0] == 0.0);
  CHECK(lg[1] == doctest::Approx(1e-3));
  CHECK(lg[3] == doctest::Approx(0.1));
  CHECK(lg[5] == doctest::Approx(10.0));
  CHECK_THROWS_AS(parse_grid("log:0:1:3"), Error);
  CHECK_THROWS_AS(parse_grid(""), Error);
  const auto d = default_r_grid();
  CHECK(d.size() == 61);
  CHECK(d.front() == 0.0);
}

}  // TEST_SUITE
