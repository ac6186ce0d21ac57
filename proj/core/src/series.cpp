#include <photonstat/series.hpp>

#include <cmath>
#include <complex>

#include <photonstat/errors.hpp>
#include <photonstat/legendre.hpp>

namespace photonstat {

std::vector<double> maclaurin_coefficients(double p, double q, int max_order,
                                           int samples) {
  if (!std::isfinite(p) || !std::isfinite(q)) {
    throw parameter_error("maclaurin_coefficients: non-finite inputs");
  }
  if (max_order < 0) throw parameter_error("maclaurin_coefficients: negative order");
  if (samples <= 2 * max_order) {
    throw parameter_error("maclaurin_coefficients: too few samples for the order");
  }

  // Circle radius 0.9 / (dominant root): both factors of the quadratic stay
  // in the right half-plane there, so the principal sqrt branch is safe.
  const double lambda = dominant_root_modulus(p, q);
  const double radius = lambda > 1e-3 ? 0.9 / lambda : 1.0;

  std::vector<std::complex<double>> g(samples);
  for (int j = 0; j < samples; ++j) {
    const double phi = 2.0 * M_PI * j / samples;
    const std::complex<double> tau = std::polar(radius, phi);
    const std::complex<double> quad = 1.0 - 2.0 * p * tau + q * tau * tau;
    g[j] = 1.0 / std::sqrt(quad);
  }

  std::vector<double> coeffs(max_order + 1);
  for (int k = 0; k <= max_order; ++k) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < samples; ++j) {
      const double phi = -2.0 * M_PI * j * k / samples;
      acc += g[j] * std::polar(1.0, phi);
    }
    coeffs[k] = acc.real() / (samples * std::pow(radius, k));
  }
  return coeffs;
}

}  // namespace photonstat
