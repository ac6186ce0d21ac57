#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include <photonstat/errors.hpp>
#include <photonstat/params.hpp>

#include "test_helpers.hpp"

using namespace photonstat;
using test_helpers::close_rel;

TEST_CASE("vacuum parameters collapse every coefficient") {
  const CoefficientSet c = coefficients({0.0, 0.0, 0, Variant::Added});
  CHECK(c.A == 1.0);
  CHECK(c.B == 0.0);
  CHECK(c.C == 0.0);
  CHECK(c.D == 1.0);
  CHECK(c.E == 0.0);
}

TEST_CASE("r = 0 reduces A and D to the thermal forms") {
  for (double nc : {0.1, 1.0, 2.0, 7.5}) {
    const CoefficientSet c = coefficients({nc, 0.0, 0, Variant::Added});
    CHECK(close_rel(c.A, (nc + 1.0) * (nc + 1.0), 1e-14));
    CHECK(close_rel(c.D, nc + 1.0, 1e-14));
    CHECK(close_rel(c.C, nc * nc, 1e-14));
    CHECK(close_rel(c.E, nc, 1e-14));
  }
}

TEST_CASE("coefficient set at n_c = 1, r = 0.5") {
  // Reference values from a 60-digit evaluation of the defining expressions.
  const CoefficientSet c = coefficients({1.0, 0.5, 0, Variant::Added});
  CHECK(close_rel(c.A, 4.8146209522228656677, 1e-14));
  CHECK(c.B == 2.0);
  CHECK(close_rel(c.C, 0.18537904777713433228, 1e-13));
  CHECK(close_rel(c.D, 2.8146209522228656677, 1e-14));
  CHECK(close_rel(c.E, 1.8146209522228656677, 1e-14));
}

TEST_CASE("coefficient identities hold over random parameters") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> nc_dist(0.0, 10.0);
  std::uniform_real_distribution<double> r_dist(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double nc = nc_dist(rng);
    const double r = r_dist(rng);
    const CoefficientSet c = coefficients({nc, r, 0, Variant::Added});

    const double s1 = std::max({c.A, 2.0 * c.B, std::fabs(c.C), 1.0});
    CHECK(std::fabs(c.A - 2.0 * c.B + c.C - 1.0) <= 1e-12 * s1);

    const double s2 = std::max({c.D, std::fabs(c.E), 1.0});
    CHECK(std::fabs(c.D - c.E - 1.0) <= 1e-12 * s2);

    const double s3 = std::max({std::fabs(c.D + c.E), std::fabs(c.A - c.C), 1.0});
    CHECK(std::fabs((c.D + c.E) - (c.A - c.C)) <= 1e-12 * s3);

    const double rhs = std::pow((2.0 * nc + 1.0) * std::sinh(2.0 * r) / 2.0, 2);
    const double s4 = std::max({c.B * c.B, std::fabs(c.A * c.C), rhs, 1.0});
    CHECK(std::fabs(c.B * c.B - c.A * c.C - rhs) <= 1e-12 * s4);

    CHECK(c.A > 0.0);
    CHECK(c.B >= 0.0);
  }
}

TEST_CASE("coefficients is pure: identical inputs, bit-identical outputs") {
  const StateParams sp{0.7, -1.3, 2, Variant::Subtracted};
  const CoefficientSet a = coefficients(sp);
  const CoefficientSet b = coefficients(sp);
  CHECK(a.A == b.A);
  CHECK(a.B == b.B);
  CHECK(a.C == b.C);
  CHECK(a.D == b.D);
  CHECK(a.E == b.E);
}

TEST_CASE("validate_params reports violations") {
  CHECK(validate_params({1.0, 0.3, 2, Variant::Added}).empty());

  const auto negative = validate_params({-0.1, 0.0, 0, Variant::Added});
  REQUIRE(negative.size() == 1);
  CHECK(negative[0].severity == Severity::Error);
  CHECK(negative[0].message.find("negative") != std::string::npos);

  const auto nan = validate_params(
      {std::numeric_limits<double>::quiet_NaN(), 0.0, 0, Variant::Added});
  CHECK_FALSE(params_valid(nan));

  const auto inf_r = validate_params(
      {1.0, std::numeric_limits<double>::infinity(), 0, Variant::Added});
  CHECK_FALSE(params_valid(inf_r));

  const auto bad_m = validate_params({1.0, 0.0, -3, Variant::Added});
  CHECK_FALSE(params_valid(bad_m));
}

TEST_CASE("degenerate vacuum subtraction is a warning, not an error") {
  const auto report = validate_params({0.0, 0.0, 1, Variant::Subtracted});
  REQUIRE(report.size() == 1);
  CHECK(report[0].severity == Severity::Warning);
  CHECK(report[0].message.find("zero-norm") != std::string::npos);
  CHECK(params_valid(report));
  CHECK(is_zero_norm_state({0.0, 0.0, 1, Variant::Subtracted}));
  CHECK_FALSE(is_zero_norm_state({0.0, 0.0, 0, Variant::Subtracted}));
  CHECK_FALSE(is_zero_norm_state({0.0, 0.1, 1, Variant::Subtracted}));
  CHECK_FALSE(is_zero_norm_state({0.0, 0.0, 1, Variant::Added}));
}

TEST_CASE("coefficients rejects invalid parameters") {
  CHECK_THROWS_AS(coefficients({-1.0, 0.0, 0, Variant::Added}), parameter_error);
  CHECK_THROWS_AS(
      coefficients({std::numeric_limits<double>::quiet_NaN(), 0.0, 0, Variant::Added}),
      parameter_error);
  CHECK_THROWS_AS(coefficients({1.0, 0.0, -1, Variant::Added}), parameter_error);
}
