#pragma once

#include <Eigen/Dense>

#include <photonstat/analytics.hpp>
#include <photonstat/params.hpp>

namespace photonstat {

/// Dense density matrix in a truncated Fock basis. Every state built here is
/// real (the squeeze generator is a real matrix), so Hermiticity reads as
/// symmetry and no complex storage is needed.
struct DensityMatrix {
  Eigen::MatrixXd entries;

  int dim() const { return static_cast<int>(entries.rows()); }
};

/// Annihilation operator: entry (n-1, n) = sqrt(n). Its transpose is the
/// creation operator. Requires dim >= 2.
Eigen::MatrixXd annihilation_matrix(int dim);

/// Smallest dimension whose thermal tail (n_c/(n_c+1))^dim is < 1e-12.
int thermal_min_dim(double n_c);

/// Diagonal thermal state with weights n_c^n / (n_c+1)^{n+1}. Rejects
/// dimensions below thermal_min_dim (the message reports the minimum).
DensityMatrix thermal_state(double n_c, int dim);

/// exp[r (a^2 - a^dag^2) / 2] via Pade scaling-and-squaring; orthogonal up
/// to truncation effects in the top rows, with exact even/odd parity blocks.
Eigen::MatrixXd squeeze_matrix(double r, int dim);

/// Squeezed thermal state S rho_th S^T.
DensityMatrix sts_density(double n_c, double r, int dim);

/// a^dag^m rho a^m (Added) or a^m rho a^dag^m (Subtracted), unnormalized.
/// Added requires mass < 1e-13 in the top m + ceil(dim/8) Fock levels;
/// otherwise the shifted-in truncation boundary would corrupt the result.
DensityMatrix apply_photon_op(const DensityMatrix& rho, int m, Variant variant);

/// trace[a^dag^m S rho_th S^T a^m] (resp. the subtracted ordering): the
/// brute-force normalization constant.
double oracle_norm(const StateParams& params, int dim);

/// Normalized diagonal of the post-operation matrix, entries 0..n_max.
Distribution oracle_pnd(const StateParams& params, int dim, int n_max);

/// sum_n e^{f n} <n| rho_STS |n>; requires the e^{f n} tail negligible at
/// the truncation (automatic for f <= 0).
double oracle_exp_number(double f, const StateParams& params, int dim);

/// Builds the two-mode thermal vacuum sech(theta) sum tanh^n(theta) |n,n~>
/// in the doubled (dim^2) space, partial-traces the fictitious mode and
/// returns the max elementwise deviation from thermal_state(n_c).
/// Rejects dim > 512 (doubled-space memory guard).
double tfd_purification_check(double n_c, int dim);

/// <a^dag a> on the physical mode under the same doubled-space state;
/// equals n_c up to the truncation tail.
double tfd_mean_photon_number(double n_c, int dim);

/// max(64, n_max + 16, ceil(12 (2 n_c + 1) e^{2|r|})), lifted to the thermal
/// minimum and to dimensions with enough photon-operation headroom.
int heuristic_min_dim(const StateParams& params, int n_max);

struct OracleCertificate {
  int dim = 0;       // dimension the reported value was computed at
  double delta = 0;  // change observed in the last doubling step
};

struct CertifiedNorm {
  double value = 0;
  OracleCertificate cert;
};

struct CertifiedPnd {
  Distribution dist;
  OracleCertificate cert;
};

struct CertifiedExp {
  double value = 0;
  OracleCertificate cert;
};

/// Doubling certificate: compute at dim and 2*dim, accept when the change is
/// below 1e-10 (relative for norms, per-entry absolute for distributions),
/// else keep doubling up to max_dim.
CertifiedNorm certified_oracle_norm(const StateParams& params, int max_dim = 8192);
CertifiedPnd certified_oracle_pnd(const StateParams& params, int n_max, int max_dim = 8192);
CertifiedExp certified_oracle_exp(double f, const StateParams& params, int max_dim = 8192);

/// Max elementwise |M - M^T| (the Hermiticity defect for real matrices).
double symmetry_defect(const Eigen::MatrixXd& mat);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& sym);

}  // namespace photonstat
