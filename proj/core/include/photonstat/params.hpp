#pragma once

#include <string>
#include <vector>

namespace photonstat {

enum class Variant { Added, Subtracted };

const char* to_string(Variant v);

/// Physical parameters of an m-photon added or subtracted squeezed thermal
/// state: mean thermal photon number n_c >= 0, squeezing parameter r,
/// photon operation count m >= 0, and the add/subtract variant.
struct StateParams {
  double n_c = 0.0;
  double r = 0.0;
  int m = 0;
  Variant variant = Variant::Added;
};

/// Derived Gaussian coefficients feeding every closed form:
///   A = n_c^2 + (2 n_c + 1) cosh^2 r
///   B = n_c (n_c + 1)
///   C = n_c^2 - (2 n_c + 1) sinh^2 r
///   D = n_c cosh 2r + cosh^2 r
///   E = [(2 n_c + 1) cosh 2r - 1] / 2
/// Algebraic identities (hold for every valid parameter set):
///   A - 2B + C = 1,  D - E = 1,  D + E = A - C,
///   B^2 - AC = D^2 - A = E^2 - C = [(2 n_c + 1) sinh 2r / 2]^2.
struct CoefficientSet {
  double A;
  double B;
  double C;
  double D;
  double E;
};

enum class Severity { Error, Warning };

struct ParamIssue {
  Severity severity;
  std::string message;
};

/// Lists every violated parameter invariant; empty means valid.
/// The degenerate subtraction case (n_c = 0, r = 0, m >= 1) is reported as a
/// warning: the state has zero norm and no photon-number distribution.
std::vector<ParamIssue> validate_params(const StateParams& params);

/// True when the report carries no Error-severity entries.
bool params_valid(const std::vector<ParamIssue>& report);

/// Throws parameter_error listing the violations, if any.
void require_valid(const StateParams& params);

/// Zero-norm states: n_c = 0, r = 0, m >= 1, Subtracted.
bool is_zero_norm_state(const StateParams& params);

/// Computes the coefficient set from the n_c-form expressions.
/// Pure and deterministic; rejects invalid parameters.
CoefficientSet coefficients(const StateParams& params);

}  // namespace photonstat
