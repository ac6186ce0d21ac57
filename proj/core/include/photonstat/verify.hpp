#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace photonstat {

/// Options for the cross-check suite behind the `verify` CLI subcommand.
struct CheckOptions {
  double tol = 1e-8;
  std::optional<std::string> only_check;  // run a single named check
  std::optional<double> n_c;              // narrow purification to one n_c
};

struct CheckResult {
  std::string name;
  bool passed = false;
  /// The number compared against tol (largest deviation the check saw).
  double max_deviation = 0.0;
  /// Named sub-deviations (e.g. norm_rel_max, pnd_abs_max) for reporting.
  std::map<std::string, double> metrics;
  std::string detail;
};

/// Runs the named checks (all by default):
///   coefficients: A..E identities over 1000 seeded random draws.
///   genfun: Cauchy-extracted Maclaurin coefficients of the two
///     normalization generating functions vs m!-scaled norms (m <= 30),
///     plus partial-sum convergence at K = 200.
///   oracle: closed forms vs the truncated-Fock oracle over the standard
///     grid (norms relative, PND entries absolute), every value passing
///     the dimension-doubling certificate.
///   purification: doubled-space thermal vacuum partial trace vs the
///     thermal state, plus its mean photon number.
///   exponent: adjudicates the subtracted-PND exponent reading; the
///     (m+n)/2 form must match the oracle and the literal m + n/2 form
///     must demonstrably fail on a witness grid point.
/// A check passes when max_deviation < tol (the exponent check additionally
/// requires the literal reading to exceed tol). Throws parameter_error for
/// an unknown check name.
std::vector<CheckResult> run_verification(const CheckOptions& opts);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace photonstat
