#pragma once

#include <vector>

namespace photonstat {

/// Legendre polynomial P_m(x) by the three-term recurrence
///   (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
/// Arguments with |x| > 1 are permitted.
double legendre_p(int m, double x);

/// Real sequence W_k(p, q) defined by
///   W_0 = 1,  W_1 = p,  (k+1) W_{k+1} = (2k+1) p W_k - k q W_{k-1}.
/// For q > 0 this equals q^{k/2} P_k(p / sqrt q); the recurrence extends it
/// to any real q with every intermediate real (no complex arithmetic even
/// when the Legendre argument would be imaginary).
///
/// Entries are held as mantissa * 2^exponent with a shared running exponent
/// accumulator, rescaled whenever a mantissa leaves [1e-150, 1e150], so logs
/// and ratios of far-out entries (k of a few thousand) stay well defined
/// beyond the double range.
class ScaledLegendreSequence {
 public:
  ScaledLegendreSequence(double p, double q, int max_order);

  double p() const { return p_; }
  double q() const { return q_; }
  int max_order() const { return static_cast<int>(mantissa_.size()) - 1; }

  /// W_k as a double; saturates to +/-inf (or flushes to 0) outside range.
  double value(int k) const;
  /// ln |W_k|; -infinity when W_k == 0.
  double log_abs(int k) const;
  int sign(int k) const;
  /// W_num / W_den; throws domain_error when W_den == 0.
  double ratio(int num, int den) const;

  double mantissa(int k) const;
  long exponent2(int k) const;

  /// Materializes W_0..W_K via value().
  std::vector<double> values() const;

 private:
  void check_index(int k) const;

  double p_;
  double q_;
  std::vector<double> mantissa_;
  std::vector<long> exp2_;
};

/// Factory for the W sequence; rejects non-finite p, q and negative orders.
ScaledLegendreSequence scaled_sequence(double p, double q, int max_order);

/// Closed form (1 - 2 p t + q t^2)^{-1/2}; throws domain_error when the
/// quadratic is not positive.
double genfun_closed_form(double p, double q, double t);

/// Partial sum sum_{k<=K} W_k t^k of the generating identity
///   (1 - 2 p t + q t^2)^{-1/2} = sum_k W_k t^k.
/// Requires the quadratic positive and |t| strictly inside the radius of
/// convergence; throws domain_error otherwise.
double genfun_partial_sum(double p, double q, double t, int max_order);

/// Modulus of the dominant root of the characteristic quadratic; the series
/// above converges for |t| < 1 / dominant_root_modulus(p, q).
double dominant_root_modulus(double p, double q);

}  // namespace photonstat
