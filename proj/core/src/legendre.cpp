#include <photonstat/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <photonstat/errors.hpp>

namespace photonstat {

namespace {

constexpr double kRescaleHigh = 1e150;
constexpr double kRescaleLow = 1e-150;

void check_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw parameter_error(std::string(name) + " must be finite");
  }
}

}  // namespace

double legendre_p(int m, double x) {
  if (m < 0) throw parameter_error("legendre_p: order must be non-negative");
  check_finite(x, "legendre_p argument");
  if (m == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < m; ++k) {
    const double next = ((2 * k + 1) * x * cur - k * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

ScaledLegendreSequence::ScaledLegendreSequence(double p, double q, int max_order)
    : p_(p), q_(q) {
  check_finite(p, "scaled_sequence p");
  check_finite(q, "scaled_sequence q");
  if (max_order < 0) throw parameter_error("scaled_sequence: order must be non-negative");

  mantissa_.reserve(max_order + 1);
  exp2_.reserve(max_order + 1);
  mantissa_.push_back(1.0);
  exp2_.push_back(0);
  if (max_order == 0) return;

  long e = 0;
  double prev = 1.0;
  double cur = p;
  mantissa_.push_back(cur);
  exp2_.push_back(e);

  for (int k = 1; k < max_order; ++k) {
    double next = ((2 * k + 1) * p * cur - static_cast<double>(k) * q * prev) / (k + 1);
    prev = cur;
    cur = next;
    // Keep the running pair inside [1e-150, 1e150]: the shared exponent
    // accumulator absorbs the scale so ratios and logs survive overflow.
    const double mag = std::max(std::fabs(prev), std::fabs(cur));
    if (mag > kRescaleHigh || (mag != 0.0 && mag < kRescaleLow)) {
      const int shift = std::ilogb(mag);
      prev = std::ldexp(prev, -shift);
      cur = std::ldexp(cur, -shift);
      e += shift;
    }
    mantissa_.push_back(cur);
    exp2_.push_back(e);
  }
}

void ScaledLegendreSequence::check_index(int k) const {
  if (k < 0 || k >= static_cast<int>(mantissa_.size())) {
    throw parameter_error("scaled sequence index out of range");
  }
}

double ScaledLegendreSequence::value(int k) const {
  check_index(k);
  const long e = exp2_[k];
  if (e == 0) return mantissa_[k];
  // ldexp saturates to +/-inf / flushes to 0 outside the double range.
  const int clamped = static_cast<int>(std::clamp(e, -100000L, 100000L));
  return std::ldexp(mantissa_[k], clamped);
}

double ScaledLegendreSequence::log_abs(int k) const {
  check_index(k);
  if (mantissa_[k] == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::fabs(mantissa_[k])) + static_cast<double>(exp2_[k]) * M_LN2;
}

int ScaledLegendreSequence::sign(int k) const {
  check_index(k);
  return (mantissa_[k] > 0.0) - (mantissa_[k] < 0.0);
}

double ScaledLegendreSequence::ratio(int num, int den) const {
  check_index(num);
  check_index(den);
  if (mantissa_[den] == 0.0) throw domain_error("ratio against a zero sequence entry");
  const double m = mantissa_[num] / mantissa_[den];
  const long e = exp2_[num] - exp2_[den];
  const int clamped = static_cast<int>(std::clamp(e, -100000L, 100000L));
  return std::ldexp(m, clamped);
}

double ScaledLegendreSequence::mantissa(int k) const {
  check_index(k);
  return mantissa_[k];
}

long ScaledLegendreSequence::exponent2(int k) const {
  check_index(k);
  return exp2_[k];
}

std::vector<double> ScaledLegendreSequence::values() const {
  std::vector<double> out(mantissa_.size());
  for (int k = 0; k < static_cast<int>(out.size()); ++k) out[k] = value(k);
  return out;
}

ScaledLegendreSequence scaled_sequence(double p, double q, int max_order) {
  return ScaledLegendreSequence(p, q, max_order);
}

double dominant_root_modulus(double p, double q) {
  check_finite(p, "p");
  check_finite(q, "q");
  const double disc = p * p - q;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    return std::max(std::fabs(p + root), std::fabs(p - root));
  }
  return std::sqrt(q);  // complex conjugate pair of modulus sqrt(q)
}

double genfun_closed_form(double p, double q, double t) {
  check_finite(p, "p");
  check_finite(q, "q");
  check_finite(t, "t");
  const double quad = 1.0 - 2.0 * p * t + q * t * t;
  if (quad <= 0.0) {
    throw domain_error("generating function undefined: 1 - 2pt + qt^2 <= 0");
  }
  return 1.0 / std::sqrt(quad);
}

double genfun_partial_sum(double p, double q, double t, int max_order) {
  if (max_order < 0) throw parameter_error("genfun_partial_sum: order must be non-negative");
  genfun_closed_form(p, q, t);  // domain check on the quadratic
  if (std::fabs(t) * dominant_root_modulus(p, q) >= 1.0) {
    throw domain_error("t outside the series' radius of convergence");
  }

  const ScaledLegendreSequence w(p, q, max_order);
  if (w.exponent2(max_order) == 0) {
    double sum = 0.0;
    double tk = 1.0;
    for (int k = 0; k <= max_order; ++k) {
      sum += w.value(k) * tk;
      tk *= t;
    }
    return sum;
  }
  // Rescaled regime (huge |W_k| offset by tiny t^k): combine in log space.
  const double log_t = std::log(std::fabs(t));
  double sum = 1.0;  // k = 0 term
  for (int k = 1; k <= max_order; ++k) {
    const int s = w.sign(k);
    if (s == 0 || t == 0.0) continue;
    const double term = std::exp(w.log_abs(k) + k * log_t);
    const int tsign = (t < 0.0 && (k & 1)) ? -1 : 1;
    sum += s * tsign * term;
  }
  return sum;
}

}  // namespace photonstat
