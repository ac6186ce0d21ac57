#include <photonstat/analytics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <photonstat/errors.hpp>
#include <photonstat/legendre.hpp>

namespace photonstat {

namespace {

constexpr double kAutoMassTarget = 1e-10;   // table must hold >= 1 - this
constexpr double kAutoHalfMass = 1e-12;     // newest upper half must be below
constexpr int kAutoLimit = 1000000;

// ln C_{.,m}: lgamma(m+1) + ln W_m(D, A) (added) or + ln W_m(E, C)
// (subtracted). -inf signals the zero-norm vacuum subtraction.
double log_norm(const StateParams& params, const CoefficientSet& c) {
  const bool added = params.variant == Variant::Added;
  const double p = added ? c.D : c.E;
  const double q = added ? c.A : c.C;
  const ScaledLegendreSequence w(p, q, params.m);
  const int s = w.sign(params.m);
  if (s == 0) return -std::numeric_limits<double>::infinity();
  if (s < 0) {
    // W_m(D,A) and W_m(E,C) are positive for every physical parameter set.
    throw domain_error("normalization sequence turned negative; parameters outside the physical domain");
  }
  return std::lgamma(params.m + 1.0) + w.log_abs(params.m);
}

double log_norm(const StateParams& params) {
  return log_norm(params, coefficients(params));
}

// Unnormalized log weight of P(n) relative to the W sequence entry:
//   added:      n >= m,  P(n) = exp[lgamma(n+1) - lgamma(n-m+1) - log_norm]
//                          * W_{n-m}(B/A, C/A) / sqrt(A)
//   subtracted:          P(n) = exp[lgamma(m+n+1) - lgamma(n+1) - log_norm]
//                          * W_{m+n}(B/A, C/A) / sqrt(A)
double pnd_from_sequence(const StateParams& params, const CoefficientSet& c,
                         const ScaledLegendreSequence& w, double log_norm_value,
                         int n) {
  int order;
  double log_fac;
  if (params.variant == Variant::Added) {
    if (n < params.m) return 0.0;
    order = n - params.m;
    log_fac = std::lgamma(n + 1.0) - std::lgamma(order + 1.0);
  } else {
    order = n + params.m;
    log_fac = std::lgamma(order + 1.0) - std::lgamma(n + 1.0);
  }
  const int s = w.sign(order);
  if (s == 0) return 0.0;
  const double log_p =
      log_fac - 0.5 * std::log(c.A) + w.log_abs(order) - log_norm_value;
  return s * std::exp(log_p);
}

struct PndEvaluator {
  StateParams params;
  CoefficientSet c;
  double log_norm_value;

  explicit PndEvaluator(const StateParams& sp)
      : params(sp), c(coefficients(sp)), log_norm_value(log_norm(sp, c)) {
    if (std::isinf(log_norm_value)) {
      throw zero_norm_error(
          "zero-norm state: cannot subtract photons from the vacuum");
    }
  }

  // W order needed to evaluate photon numbers up to n_max.
  int order_for(int n_max) const {
    return params.variant == Variant::Added ? std::max(n_max - params.m, 0)
                                            : n_max + params.m;
  }

  std::vector<double> raw_table(int n_max) const {
    const ScaledLegendreSequence w(c.B / c.A, c.C / c.A, order_for(n_max));
    std::vector<double> probs(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
      probs[n] = pnd_from_sequence(params, c, w, log_norm_value, n);
    }
    return probs;
  }
};

void check_photon_number(int n) {
  if (n < 0) throw parameter_error("photon number must be non-negative");
}

Distribution finalize(std::vector<double> raw, int n_max) {
  double sum = 0.0;
  for (double v : raw) sum += v;
  Distribution dist;
  dist.n_max = n_max;
  dist.tail_bound = std::max(0.0, 1.0 - sum);
  for (double& v : raw) v = std::max(v, 0.0);  // clamp at the output boundary
  dist.probabilities = std::move(raw);
  return dist;
}

// Doubles the table until `enough(raw)` holds; returns the raw table.
template <typename Enough>
std::vector<double> grow_table(const PndEvaluator& eval, Enough enough) {
  int size = std::max(64, 2 * (eval.params.m + 1));
  for (;;) {
    std::vector<double> raw = eval.raw_table(size - 1);
    if (enough(raw)) return raw;
    size *= 2;
    if (size > kAutoLimit) {
      throw truncation_error("auto truncation did not converge by n_max = 10^6");
    }
  }
}

}  // namespace

double expectation_exp_number(double f, const StateParams& params) {
  if (!std::isfinite(f)) {
    // The f -> -inf limit exists (A^{-1/2}) but the operation contract is a
    // finite exponent.
    throw parameter_error("expectation exponent f must be finite");
  }
  if (params.m != 0) {
    throw parameter_error("expectation_exp_number is defined for the base state (m = 0)");
  }
  const CoefficientSet c = coefficients(params);
  const double ef = std::exp(f);
  const double quad = c.C * ef * ef - 2.0 * c.B * ef + c.A;
  if (quad <= 0.0) {
    throw domain_error("expectation divergent: C e^{2f} - 2B e^f + A <= 0");
  }
  return 1.0 / std::sqrt(quad);
}

double norm_pasts(const StateParams& params) {
  if (params.variant != Variant::Added) {
    throw parameter_error("norm_pasts expects the Added variant");
  }
  return std::exp(log_norm(params));
}

double norm_pssts(const StateParams& params) {
  if (params.variant != Variant::Subtracted) {
    throw parameter_error("norm_pssts expects the Subtracted variant");
  }
  const double lz = log_norm(params);
  return std::isinf(lz) ? 0.0 : std::exp(lz);
}

double pnd_pasts(const StateParams& params, int n) {
  check_photon_number(n);
  if (params.variant != Variant::Added) {
    throw parameter_error("pnd_pasts expects the Added variant");
  }
  if (n < params.m) return 0.0;  // no support below the added photon count
  const PndEvaluator eval(params);
  const ScaledLegendreSequence w(eval.c.B / eval.c.A, eval.c.C / eval.c.A,
                                 eval.order_for(n));
  return pnd_from_sequence(params, eval.c, w, eval.log_norm_value, n);
}

double pnd_pssts(const StateParams& params, int n) {
  check_photon_number(n);
  if (params.variant != Variant::Subtracted) {
    throw parameter_error("pnd_pssts expects the Subtracted variant");
  }
  const PndEvaluator eval(params);
  const ScaledLegendreSequence w(eval.c.B / eval.c.A, eval.c.C / eval.c.A,
                                 eval.order_for(n));
  return pnd_from_sequence(params, eval.c, w, eval.log_norm_value, n);
}

double pnd(const StateParams& params, int n) {
  return params.variant == Variant::Added ? pnd_pasts(params, n)
                                          : pnd_pssts(params, n);
}

Distribution pnd_table(const StateParams& params, int n_max) {
  require_valid(params);
  const PndEvaluator eval(params);

  if (n_max != kAutoNMax) {
    if (n_max < 0) throw parameter_error("n_max must be non-negative (or auto)");
    return finalize(eval.raw_table(n_max), n_max);
  }

  std::vector<double> raw = grow_table(eval, [](const std::vector<double>& t) {
    double total = 0.0;
    double upper_half = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
      total += t[i];
      if (2 * i >= t.size()) upper_half += t[i];
    }
    return total >= 1.0 - kAutoMassTarget && upper_half < kAutoHalfMass;
  });

  // Trim to the smallest n_max already holding the target mass.
  double cum = 0.0;
  int keep = static_cast<int>(raw.size()) - 1;
  for (size_t i = 0; i < raw.size(); ++i) {
    cum += raw[i];
    if (cum >= 1.0 - kAutoMassTarget) {
      keep = static_cast<int>(i);
      break;
    }
  }
  raw.resize(keep + 1);
  return finalize(std::move(raw), keep);
}

double mean_photon_number(const StateParams& params) {
  require_valid(params);
  const PndEvaluator eval(params);

  // The mass rule alone is not enough for the first moment: the tail enters
  // weighted by n, so convergence is judged on the weighted sum.
  const std::vector<double> raw =
      grow_table(eval, [](const std::vector<double>& t) {
        double total = 0.0;
        double weighted = 0.0;
        double upper_half_weighted = 0.0;
        for (size_t i = 0; i < t.size(); ++i) {
          total += t[i];
          const double w = static_cast<double>(i) * t[i];
          weighted += w;
          if (2 * i >= t.size()) upper_half_weighted += w;
        }
        return total >= 1.0 - kAutoMassTarget &&
               upper_half_weighted < kAutoHalfMass * std::max(1.0, weighted);
      });

  double mean = 0.0;
  for (size_t i = 0; i < raw.size(); ++i) mean += static_cast<double>(i) * raw[i];
  return mean;
}

}  // namespace photonstat
