#include <photonstat/params.hpp>

#include <cmath>

#include <photonstat/errors.hpp>

namespace photonstat {

const char* to_string(Variant v) {
  return v == Variant::Added ? "add" : "sub";
}

std::vector<ParamIssue> validate_params(const StateParams& params) {
  std::vector<ParamIssue> issues;
  if (!std::isfinite(params.n_c)) {
    issues.push_back({Severity::Error, "mean thermal photon number n_c is not finite"});
  } else if (params.n_c < 0.0) {
    issues.push_back({Severity::Error, "mean thermal photon number n_c is negative"});
  }
  if (!std::isfinite(params.r)) {
    issues.push_back({Severity::Error, "squeezing parameter r is not finite"});
  }
  if (params.m < 0) {
    issues.push_back({Severity::Error, "photon operation count m is negative"});
  }
  if (is_zero_norm_state(params)) {
    issues.push_back({Severity::Warning,
                      "zero-norm state: subtracting photons from the vacuum "
                      "(n_c = 0, r = 0) leaves nothing to normalize"});
  }
  return issues;
}

bool params_valid(const std::vector<ParamIssue>& report) {
  for (const auto& issue : report) {
    if (issue.severity == Severity::Error) return false;
  }
  return true;
}

void require_valid(const StateParams& params) {
  const auto report = validate_params(params);
  if (params_valid(report)) return;
  std::string message = "invalid state parameters:";
  for (const auto& issue : report) {
    if (issue.severity == Severity::Error) message += " " + issue.message + ";";
  }
  throw parameter_error(message);
}

bool is_zero_norm_state(const StateParams& params) {
  return params.variant == Variant::Subtracted && params.m >= 1 &&
         params.n_c == 0.0 && params.r == 0.0;
}

CoefficientSet coefficients(const StateParams& params) {
  require_valid(params);
  const double nc = params.n_c;
  const double ch = std::cosh(params.r);
  const double sh = std::sinh(params.r);
  const double ch2r = std::cosh(2.0 * params.r);
  CoefficientSet c;
  c.A = nc * nc + (2.0 * nc + 1.0) * ch * ch;
  c.B = nc * (nc + 1.0);
  c.C = nc * nc - (2.0 * nc + 1.0) * sh * sh;
  c.D = nc * ch2r + ch * ch;
  c.E = 0.5 * ((2.0 * nc + 1.0) * ch2r - 1.0);
  return c;
}

}  // namespace photonstat
