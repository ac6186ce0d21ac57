#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <photonstat/errors.hpp>
#include <photonstat/legendre.hpp>

#include "test_helpers.hpp"

using namespace photonstat;
using test_helpers::close_abs;
using test_helpers::close_rel;

TEST_CASE("low orders are exact") {
  CHECK(legendre_p(0, 0.7) == 1.0);
  CHECK(legendre_p(1, 0.7) == 0.7);
  CHECK(legendre_p(3, 2.0) == 17.0);  // (5x^3 - 3x)/2 at x = 2
}

TEST_CASE("P_m(1) = 1 for all orders") {
  for (int m = 0; m <= 100; ++m) CHECK(legendre_p(m, 1.0) == 1.0);
}

TEST_CASE("large order outside [-1, 1]") {
  // 60-digit reference for P_50(1.5).
  CHECK(close_rel(legendre_p(50, 1.5), 6.8271511670122951283e19, 1e-13));
}

TEST_CASE("parity: P_m(-x) = (-1)^m P_m(x)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> x_dist(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double x = x_dist(rng);
    const int m = static_cast<int>(rng() % 60);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    CHECK(close_rel(legendre_p(m, -x), sign * legendre_p(m, x), 1e-12));
  }
}

TEST_CASE("Bonnet recurrence residual stays at rounding level") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> x_dist(-3.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const double x = x_dist(rng);
    const int m = 1 + static_cast<int>(rng() % 100);
    const double pm1 = legendre_p(m - 1, x);
    const double pm = legendre_p(m, x);
    const double pp1 = legendre_p(m + 1, x);
    const double residual = (m + 1) * pp1 - (2 * m + 1) * x * pm + m * pm1;
    CHECK(std::fabs(residual) <= 1e-12 * std::max(1.0, std::fabs(pm)));
  }
}

TEST_CASE("legendre_p rejects bad arguments") {
  CHECK_THROWS_AS(legendre_p(-1, 0.5), parameter_error);
  CHECK_THROWS_AS(legendre_p(3, std::numeric_limits<double>::quiet_NaN()),
                  parameter_error);
  CHECK_THROWS_AS(legendre_p(3, std::numeric_limits<double>::infinity()),
                  parameter_error);
}

TEST_CASE("W sequence basics") {
  const auto w0 = scaled_sequence(0.37, -2.0, 0);
  CHECK(w0.max_order() == 0);
  CHECK(w0.value(0) == 1.0);

  // q = p^2 forces W_k = p^k (the P_k(1) = 1 family).
  const auto w = scaled_sequence(3.0, 9.0, 3);
  CHECK(w.values() == std::vector<double>{1.0, 3.0, 9.0, 27.0});

  // One recurrence step by hand with negative q: W_2 = (3p^2 - q)/2.
  const auto wn = scaled_sequence(0.5, -1.0, 2);
  CHECK(wn.value(0) == 1.0);
  CHECK(wn.value(1) == 0.5);
  CHECK(wn.value(2) == 0.875);
}

TEST_CASE("W sequence matches q^{k/2} P_k(p/sqrt q) for positive q") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> p_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> q_dist(0.05, 4.0);
  for (int i = 0; i < 500; ++i) {
    const double p = p_dist(rng);
    const double q = q_dist(rng);
    const int k = static_cast<int>(rng() % 51);
    const auto w = scaled_sequence(p, q, k);
    const double direct = std::pow(q, k / 2.0) * legendre_p(k, p / std::sqrt(q));
    CHECK(close_rel(w.value(k), direct, 1e-10));
  }
}

TEST_CASE("W recurrence invariant holds for any real q") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> dist(-4.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const double p = dist(rng);
    const double q = dist(rng);
    const auto w = scaled_sequence(p, q, 40);
    CHECK(w.value(0) == 1.0);
    CHECK(w.value(1) == p);
    for (int k = 1; k < 40; ++k) {
      const double lhs = (k + 1) * w.value(k + 1);
      const double rhs = (2 * k + 1) * p * w.value(k) - k * q * w.value(k - 1);
      CHECK(close_rel(lhs, rhs, 1e-12));
    }
  }
}

TEST_CASE("p = 0 zeroes every odd entry exactly") {
  const auto w = scaled_sequence(0.0, -0.8, 31);
  for (int k = 1; k <= 31; k += 2) {
    CHECK(w.value(k) == 0.0);
    CHECK(w.sign(k) == 0);
  }
  for (int k = 0; k <= 31; k += 2) CHECK(w.value(k) > 0.0);
}

TEST_CASE("exponent shift keeps far-out entries usable") {
  // W_k(4, 1) = P_k(... ) growth rate 4 + sqrt(15); W_2000 overflows double.
  const auto w = scaled_sequence(4.0, 1.0, 2000);
  CHECK(w.exponent2(2000) > 0);
  CHECK(std::isinf(w.value(2000)));
  // 60-digit references for ln W_2000 and the adjacent ratio.
  CHECK(close_rel(w.log_abs(2000), 4122.5093935625700775, 1e-12));
  CHECK(close_rel(w.ratio(2000, 1999), 7.8710150922959610621, 1e-11));
  // Rescaling must not disturb the recurrence in shifted space.
  for (int k : {500, 1000, 1999}) {
    const double lhs = (k + 1) * w.ratio(k + 1, k);
    const double rhs = (2 * k + 1) * 4.0 - k * 1.0 / w.ratio(k, k - 1);
    CHECK(close_rel(lhs, rhs, 1e-10));
  }
}

TEST_CASE("decaying sequences stay usable far beyond the underflow point") {
  // lambda = 0.7 here, so W_2000 ~ 1e-310 underflows raw doubles.
  const auto w = scaled_sequence(0.45, 0.7 * 0.2, 2000);
  CHECK(std::isfinite(w.log_abs(2000)));
  CHECK(w.log_abs(2000) < std::log(1e-250));
  CHECK(w.ratio(2000, 1999) > 0.0);
  CHECK(w.ratio(2000, 1999) < 1.0);
}

TEST_CASE("sequence accessors validate indices and zero denominators") {
  const auto w = scaled_sequence(0.0, 1.0, 5);
  CHECK_THROWS_AS(w.value(6), parameter_error);
  CHECK_THROWS_AS(w.value(-1), parameter_error);
  CHECK_THROWS_AS(w.ratio(2, 1), domain_error);  // W_1 = 0 at p = 0
  CHECK_THROWS_AS(scaled_sequence(std::numeric_limits<double>::quiet_NaN(), 1.0, 3),
                  parameter_error);
  CHECK_THROWS_AS(scaled_sequence(1.0, 1.0, -1), parameter_error);
}

TEST_CASE("generating-function partial sums") {
  CHECK(genfun_partial_sum(0.0, 0.0, 0.5, 0) == 1.0);
  // Perfect square quadratic: (1 - 2t + t^2)^{-1/2} = 1/(1-t) = 2 at t = 1/2.
  CHECK(close_abs(genfun_partial_sum(1.0, 1.0, 0.5, 200), 2.0, 1e-8));
  // Closed form (1 - 0.4 + 0.04)^{-1/2} = 1.25 exactly.
  CHECK(close_abs(genfun_partial_sum(0.5, 0.25, 0.4, 60), 1.25, 1e-10));
  CHECK(genfun_closed_form(0.5, 0.25, 0.4) == 1.25);
}

TEST_CASE("partial sums increase monotonically when every term is positive") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> p_dist(0.1, 2.0);
  std::uniform_real_distribution<double> u_dist(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double p = p_dist(rng);
    const double q = u_dist(rng) * p * p;  // 0 <= q <= p^2: nonnegative terms
    const double t = 0.8 * u_dist(rng) / dominant_root_modulus(p, q);
    double prev = -1.0;
    for (int k = 0; k <= 60; k += 5) {
      const double s = genfun_partial_sum(p, q, t, k);
      CHECK(s >= prev);
      prev = s;
    }
    CHECK(prev <= genfun_closed_form(p, q, t) * (1 + 1e-12));
  }
}

TEST_CASE("K = 200 partial sums reach the closed form on in-domain samples") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> p_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> q_dist(-4.0, 4.0);
  std::uniform_real_distribution<double> u_dist(-0.5, 0.5);
  int accepted = 0;
  while (accepted < 200) {
    const double p = p_dist(rng);
    const double q = q_dist(rng);
    const double t = u_dist(rng) / std::max(1.0, std::sqrt(std::fabs(q)));
    if (1.0 - 2.0 * p * t + q * t * t <= 0.0) continue;
    if (std::fabs(t) * dominant_root_modulus(p, q) > 0.85) continue;
    ++accepted;
    const double sum = genfun_partial_sum(p, q, t, 200);
    CHECK(close_abs(sum, genfun_closed_form(p, q, t), 1e-8));
  }
}

TEST_CASE("generating function domain errors") {
  CHECK_THROWS_AS(genfun_closed_form(1.0, 0.0, 1.0), domain_error);   // quad = -1
  CHECK_THROWS_AS(genfun_partial_sum(1.0, 0.0, 1.0, 10), domain_error);
  // Positive quadratic but outside the radius of convergence.
  CHECK_THROWS_AS(genfun_partial_sum(0.0, 4.0, 0.9, 10), domain_error);
  CHECK_THROWS_AS(genfun_partial_sum(0.5, 0.25, std::numeric_limits<double>::infinity(), 10),
                  parameter_error);
}
