#pragma once

#include <vector>

namespace photonstat {

/// Maclaurin coefficients c_0..c_K of (1 - 2 p t + q t^2)^{-1/2}, extracted
/// with a trapezoidal Cauchy integral over a circle strictly inside the
/// convergence disk. Deliberately independent of the W recurrence so the two
/// routes can check each other.
std::vector<double> maclaurin_coefficients(double p, double q, int max_order,
                                           int samples = 512);

}  // namespace photonstat
