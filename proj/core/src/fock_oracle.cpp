#include <photonstat/fock_oracle.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include <photonstat/errors.hpp>

namespace photonstat {

namespace {

constexpr double kHeadroomMass = 1e-13;
constexpr double kCertTol = 1e-10;

int headroom_levels(int dim, int m) { return m + (dim + 7) / 8; }

void check_dim(int dim) {
  if (dim < 2) throw parameter_error("Fock truncation dimension must be >= 2");
}

double top_levels_mass(const Eigen::MatrixXd& rho, int levels) {
  const int dim = static_cast<int>(rho.rows());
  double mass = 0.0;
  for (int n = std::max(0, dim - levels); n < dim; ++n) mass += rho(n, n);
  return mass;
}

}  // namespace

Eigen::MatrixXd annihilation_matrix(int dim) {
  check_dim(dim);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

int thermal_min_dim(double n_c) {
  if (!std::isfinite(n_c) || n_c < 0.0) {
    throw parameter_error("mean thermal photon number must be finite and >= 0");
  }
  if (n_c == 0.0) return 2;
  const double ratio = n_c / (n_c + 1.0);
  int dim = static_cast<int>(std::ceil(std::log(1e-12) / std::log(ratio)));
  dim = std::max(dim, 2);
  while (std::pow(ratio, dim) >= 1e-12) ++dim;
  return dim;
}

DensityMatrix thermal_state(double n_c, int dim) {
  check_dim(dim);
  const int min_dim = thermal_min_dim(n_c);
  if (dim < min_dim) {
    throw truncation_error("thermal tail exceeds 1e-12 at dim " + std::to_string(dim) +
                           "; requires dim >= " + std::to_string(min_dim));
  }
  DensityMatrix rho{Eigen::MatrixXd::Zero(dim, dim)};
  if (n_c == 0.0) {
    rho.entries(0, 0) = 1.0;
    return rho;
  }
  const double log_ratio = std::log(n_c / (n_c + 1.0));
  const double log_scale = std::log(n_c + 1.0);
  for (int n = 0; n < dim; ++n) {
    rho.entries(n, n) = std::exp(n * log_ratio - log_scale);
  }
  return rho;
}

Eigen::MatrixXd squeeze_matrix(double r, int dim) {
  check_dim(dim);
  if (!std::isfinite(r)) throw parameter_error("squeezing parameter must be finite");
  // Generator (r/2)(a^2 - a^dag^2): real, antisymmetric, and coupling only
  // Fock levels of equal parity. Exponentiating the even and odd blocks
  // separately quarters the Pade scaling-and-squaring cost and keeps the
  // off-parity entries of the result exactly zero.
  const int even = (dim + 1) / 2;
  const int odd = dim / 2;
  Eigen::MatrixXd gen_even = Eigen::MatrixXd::Zero(even, even);
  Eigen::MatrixXd gen_odd = Eigen::MatrixXd::Zero(odd, odd);
  for (int n = 2; n < dim; ++n) {
    const double value = 0.5 * r * std::sqrt(static_cast<double>(n) * (n - 1));
    if (n % 2 == 0) {
      gen_even(n / 2 - 1, n / 2) = value;
      gen_even(n / 2, n / 2 - 1) = -value;
    } else {
      gen_odd(n / 2 - 1, n / 2) = value;
      gen_odd(n / 2, n / 2 - 1) = -value;
    }
  }
  const Eigen::MatrixXd exp_even = gen_even.exp();
  const Eigen::MatrixXd exp_odd = gen_odd.exp();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < even; ++i) {
    for (int j = 0; j < even; ++j) s(2 * i, 2 * j) = exp_even(i, j);
  }
  for (int i = 0; i < odd; ++i) {
    for (int j = 0; j < odd; ++j) s(2 * i + 1, 2 * j + 1) = exp_odd(i, j);
  }
  return s;
}

DensityMatrix sts_density(double n_c, double r, int dim) {
  const DensityMatrix th = thermal_state(n_c, dim);
  const Eigen::MatrixXd s = squeeze_matrix(r, dim);
  return DensityMatrix{s * th.entries * s.transpose()};
}

DensityMatrix apply_photon_op(const DensityMatrix& rho, int m, Variant variant) {
  if (m < 0) throw parameter_error("photon operation count must be non-negative");
  if (m == 0) return rho;
  const int dim = rho.dim();
  check_dim(dim);
  if (variant == Variant::Added) {
    const double mass = top_levels_mass(rho.entries, headroom_levels(dim, m));
    if (mass >= kHeadroomMass) {
      throw truncation_error(
          "photon addition headroom violated: top Fock levels carry mass " +
          std::to_string(mass) + "; increase the truncation dimension");
    }
  }

  std::vector<double> root(dim);
  for (int n = 0; n < dim; ++n) root[n] = std::sqrt(static_cast<double>(n));

  Eigen::MatrixXd cur = rho.entries;
  Eigen::MatrixXd next(dim, dim);
  for (int step = 0; step < m; ++step) {
    next.setZero();
    if (variant == Variant::Added) {
      // rho -> a^dag rho a: (i, j) <- sqrt(i) sqrt(j) rho(i-1, j-1)
      for (int j = 1; j < dim; ++j) {
        for (int i = 1; i < dim; ++i) {
          next(i, j) = root[i] * root[j] * cur(i - 1, j - 1);
        }
      }
    } else {
      // rho -> a rho a^dag: (i, j) <- sqrt(i+1) sqrt(j+1) rho(i+1, j+1)
      for (int j = 0; j + 1 < dim; ++j) {
        for (int i = 0; i + 1 < dim; ++i) {
          next(i, j) = root[i + 1] * root[j + 1] * cur(i + 1, j + 1);
        }
      }
    }
    cur.swap(next);
  }
  return DensityMatrix{std::move(cur)};
}

double oracle_norm(const StateParams& params, int dim) {
  require_valid(params);
  const DensityMatrix post =
      apply_photon_op(sts_density(params.n_c, params.r, dim), params.m, params.variant);
  return post.entries.trace();
}

Distribution oracle_pnd(const StateParams& params, int dim, int n_max) {
  require_valid(params);
  if (n_max < 0) throw parameter_error("n_max must be non-negative");
  if (n_max >= dim - headroom_levels(dim, params.m)) {
    throw truncation_error("n_max " + std::to_string(n_max) +
                           " reaches into the truncation headroom at dim " +
                           std::to_string(dim));
  }
  const DensityMatrix post =
      apply_photon_op(sts_density(params.n_c, params.r, dim), params.m, params.variant);
  const double norm = post.entries.trace();
  if (norm <= 1e-14) {
    throw zero_norm_error("zero-norm state: cannot subtract photons from the vacuum");
  }
  std::vector<double> probs(n_max + 1);
  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    probs[n] = post.entries(n, n) / norm;
    sum += probs[n];
  }
  Distribution dist;
  dist.n_max = n_max;
  dist.tail_bound = std::max(0.0, 1.0 - sum);
  for (double& v : probs) v = std::max(v, 0.0);
  dist.probabilities = std::move(probs);
  return dist;
}

double oracle_exp_number(double f, const StateParams& params, int dim) {
  require_valid(params);
  if (!std::isfinite(f)) throw parameter_error("exponent f must be finite");
  if (params.m != 0) {
    throw parameter_error("oracle_exp_number is defined for the base state (m = 0)");
  }
  const DensityMatrix sts = sts_density(params.n_c, params.r, dim);
  double sum = 0.0;
  for (int n = 0; n < dim; ++n) sum += std::exp(f * n) * sts.entries(n, n);
  const double last = std::exp(f * (dim - 1)) * std::fabs(sts.entries(dim - 1, dim - 1));
  if (last >= 1e-12 * std::max(1.0, std::fabs(sum))) {
    throw truncation_error("e^{f n} tail not negligible at dim " + std::to_string(dim));
  }
  return sum;
}

double tfd_purification_check(double n_c, int dim) {
  check_dim(dim);
  if (dim > 512) {
    throw parameter_error("purification check capped at dim = 512 (doubled-space memory guard)");
  }
  const DensityMatrix th = thermal_state(n_c, dim);  // enforces the tail bound

  // |0(beta)> = sech(theta) sum_n tanh^n(theta) |n, n~> as a dim^2 vector,
  // row index = physical mode, column index = tilde mode.
  const double theta = std::asinh(std::sqrt(n_c));
  const double log_tanh = n_c > 0.0 ? std::log(std::tanh(theta)) : 0.0;
  const double log_sech = std::log(1.0 / std::cosh(theta));
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    psi(n, n) = n_c > 0.0 ? std::exp(log_sech + n * log_tanh) : (n == 0 ? 1.0 : 0.0);
  }

  // Partial trace over the tilde mode: rho_ij = sum_k psi_ik psi_jk.
  const Eigen::MatrixXd reduced = psi * psi.transpose();
  return (reduced - th.entries).cwiseAbs().maxCoeff();
}

double tfd_mean_photon_number(double n_c, int dim) {
  check_dim(dim);
  if (dim > 512) {
    throw parameter_error("purification check capped at dim = 512 (doubled-space memory guard)");
  }
  thermal_state(n_c, dim);  // same tail-bound precondition
  const double theta = std::asinh(std::sqrt(n_c));
  const double log_tanh = n_c > 0.0 ? std::log(std::tanh(theta)) : 0.0;
  const double log_sech = std::log(1.0 / std::cosh(theta));
  double mean = 0.0;
  for (int n = 0; n < dim; ++n) {
    const double amp = n_c > 0.0 ? std::exp(log_sech + n * log_tanh) : (n == 0 ? 1.0 : 0.0);
    mean += n * amp * amp;
  }
  return mean;
}

int heuristic_min_dim(const StateParams& params, int n_max) {
  require_valid(params);
  const double spread = 12.0 * (2.0 * params.n_c + 1.0) * std::exp(2.0 * std::fabs(params.r));
  int dim = std::max({64, n_max + 16, static_cast<int>(std::ceil(spread)),
                      thermal_min_dim(params.n_c)});

  int clean_levels = std::max(n_max, 0);
  if (params.variant == Variant::Added && params.m >= 1) {
    // Photon addition demands empty top levels. The base-state PND decays
    // geometrically with the dominant-root rate; pick dim so the predicted
    // mass above the headroom boundary is an order below the 1e-13 contract.
    const CoefficientSet c = coefficients({params.n_c, params.r, 0, Variant::Added});
    const double lam =
        (c.B + std::sqrt(std::max(c.B * c.B - c.A * c.C, 0.0))) / c.A;
    if (lam > 0.0 && lam < 1.0) {
      const double p0 = 1.0 / std::sqrt(c.A);
      const double need = std::log(1e-14 * (1.0 - lam) / p0) / std::log(lam);
      if (need > clean_levels) {
        clean_levels = std::min(static_cast<int>(std::ceil(need)), 1 << 20);
      }
    }
  }
  // Keep the headroom boundary above both the PND window and the estimated
  // support of the base state.
  while (dim - headroom_levels(dim, params.m) <= clean_levels) ++dim;
  return dim;
}

namespace {

// Doubling certificate driver: quantities at dim and 2*dim must agree to
// kCertTol under `deviation`. A truncation_error at some dim just means
// "double again".
template <typename Compute, typename Deviation>
auto certify(int start_dim, int max_dim, Compute compute, Deviation deviation)
    -> std::pair<decltype(compute(start_dim)), OracleCertificate> {
  using Value = decltype(compute(start_dim));
  int dim = start_dim;
  std::optional<Value> low;
  while (2 * dim <= max_dim) {
    try {
      if (!low) low = compute(dim);
      Value high = compute(2 * dim);
      const double delta = deviation(*low, high);
      if (delta < kCertTol) {
        return {std::move(high), OracleCertificate{2 * dim, delta}};
      }
      low = std::move(high);
    } catch (const truncation_error&) {
      low.reset();
    }
    dim *= 2;
  }
  throw truncation_error("oracle did not pass the doubling certificate by dim " +
                         std::to_string(max_dim));
}

double rel_diff(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

}  // namespace

CertifiedNorm certified_oracle_norm(const StateParams& params, int max_dim) {
  const auto [value, cert] = certify(
      heuristic_min_dim(params, 0), max_dim,
      [&](int dim) { return oracle_norm(params, dim); },
      [](double a, double b) { return rel_diff(a, b); });
  return CertifiedNorm{value, cert};
}

CertifiedPnd certified_oracle_pnd(const StateParams& params, int n_max, int max_dim) {
  const auto [dist, cert] = certify(
      heuristic_min_dim(params, n_max), max_dim,
      [&](int dim) { return oracle_pnd(params, dim, n_max); },
      [](const Distribution& a, const Distribution& b) {
        double dev = 0.0;
        for (size_t i = 0; i < a.probabilities.size(); ++i) {
          dev = std::max(dev, std::fabs(a.probabilities[i] - b.probabilities[i]));
        }
        return dev;
      });
  return CertifiedPnd{dist, cert};
}

CertifiedExp certified_oracle_exp(double f, const StateParams& params, int max_dim) {
  const auto [value, cert] = certify(
      heuristic_min_dim(params, 0), max_dim,
      [&](int dim) { return oracle_exp_number(f, params, dim); },
      [](double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); });
  return CertifiedExp{value, cert};
}

double symmetry_defect(const Eigen::MatrixXd& mat) {
  return (mat - mat.transpose()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace photonstat
