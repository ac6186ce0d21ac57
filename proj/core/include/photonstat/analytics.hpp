#pragma once

#include <vector>

#include <photonstat/params.hpp>

namespace photonstat {

/// Finite photon-number probability table over n = 0..n_max, with an upper
/// bound on the probability mass beyond the table. Entries are clamped to
/// >= 0 at this boundary; internal sums always use unclamped values.
struct Distribution {
  std::vector<double> probabilities;
  int n_max = 0;
  double tail_bound = 0.0;
};

inline constexpr int kAutoNMax = -1;

/// <e^{f a^dag a}> under the squeezed thermal state (m must be 0):
///   [C e^{2f} - 2 B e^f + A]^{-1/2}.
/// Throws domain_error when the bracket is not positive.
double expectation_exp_number(double f, const StateParams& params);

/// Normalization constant of the m-photon-added squeezed thermal state,
///   m! A^{m/2} P_m(D / sqrt A), evaluated as m! W_m(D, A). Always > 0.
double norm_pasts(const StateParams& params);

/// Normalization constant of the m-photon-subtracted squeezed thermal state,
///   m! C^{m/2} P_m(E / sqrt C), evaluated as m! W_m(E, C). Real also for
/// C < 0; zero exactly when n_c = 0, r = 0, m >= 1 (nothing to subtract).
double norm_pssts(const StateParams& params);

/// P(n) of the added state: 0 for n < m, else
///   n! / [(n-m)! C_{a,m} sqrt A] * W_{n-m}(B/A, C/A).
/// Factorial ratios go through log-gamma so large n stays finite.
double pnd_pasts(const StateParams& params, int n);

/// P(n) of the subtracted state:
///   (m+n)! / [n! C_{s,m} sqrt A] * W_{m+n}(B/A, C/A).
/// Throws zero_norm_error when C_{s,m} = 0.
double pnd_pssts(const StateParams& params, int n);

/// Dispatches on params.variant.
double pnd(const StateParams& params, int n);

/// Probability table up to n_max. With n_max = kAutoNMax the table doubles
/// until the accumulated mass reaches 1 - 1e-10 and the mass of the newest
/// upper half drops below 1e-12, then trims to the smallest sufficient
/// n_max. Fails with truncation_error if not converged by n_max = 10^6.
Distribution pnd_table(const StateParams& params, int n_max = kAutoNMax);

/// First moment sum_n n P(n), truncated when the n-weighted tail is
/// negligible. For m = 0 this equals n_c + (2 n_c + 1) sinh^2 r.
double mean_photon_number(const StateParams& params);

}  // namespace photonstat
