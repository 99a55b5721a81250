#pragma once
// Estimate harness.  Each check turns one identity or inequality into a list
// of labelled samples and a pass / fail / inconclusive verdict.
//
// Equality checks compare against a target with a two-sided tolerance.
// Inequality checks only assert boundedness by a configured constant plus a
// growth-trend test; they record the empirical constant and never assert a
// sharp one.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hk/spectral.hpp"

namespace hk::verify {

enum class EstimateId {
  odd_identity,
  radial_3d_identity,
  kato_nd,
  kernel_bound,
  operator_norm,
  morawetz_2d,
  even_3d,
  hermite_sobolev,
  collapse_9d,
  antideriv_norms,
  appendix_identities,
};

std::string_view to_string(EstimateId id);
std::optional<EstimateId> estimate_id_from_string(std::string_view s);

enum class Status { passed, failed, inconclusive };

std::string_view to_string(Status s);
std::optional<Status> status_from_string(std::string_view s);

struct Sample {
  std::string label;
  double ratio = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  bool operator==(const Sample&) const = default;
};

struct EstimateReport {
  EstimateId id = EstimateId::odd_identity;
  std::string name;  // unique per run, e.g. "kato_n3_delta1"
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Sample> samples;
  double sup_ratio = 0.0;
  double tolerance = 0.0;
  Status status = Status::failed;
  std::string note;

  bool passed() const { return status == Status::passed; }
  bool operator==(const EstimateReport&) const = default;
};

struct ScanConfig {
  int k_max = 20;
  int trials = 16;
  std::uint64_t seed = 42;
  int rule_scale = 1;
  std::optional<double> tolerance;  // overrides each check's default
  int n = 3;
  double delta = 1.0;
  bool negative_controls = false;

  double tol_or(double fallback) const { return tolerance.value_or(fallback); }
  bool operator==(const ScanConfig&) const = default;
};

/// Least-squares slope of log(value) against log(k) over points with k >= 1.
double log_log_slope(const std::vector<std::pair<int, double>>& points);

/// Deterministic complex-Gaussian unit state on the given indices.  The stream
/// depends only on (seed, tag, trial).
spectral::SpectralState random_state(int n, int k_max, const std::vector<spectral::MultiIndex>& support,
                                     std::uint64_t seed, std::string_view tag, int trial);

// Default bounds for the inequality checks.
double default_kato_bound(int weighted_axes, double delta);

struct OperatorNorm {
  double one_sided = 0.0;  // largest singular value of M_ab = int Phi_a Phi_b |x|^{-delta}
  double two_sided = 0.0;  // norm of |x|^{-delta} P_k |y|^{-delta}
  int iterations = 0;
  bool converged = false;
  bool doubling_stable = true;
};

/// Largest eigenvalue of a symmetric positive semidefinite matrix by power
/// iteration on A^T A, stopping when the Rayleigh quotient changes by less than
/// rel_tol.  Returns (sqrt of the top eigenvalue of A^T A, iterations, converged).
struct PowerResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};
PowerResult top_singular_value(const Eigen::MatrixXd& A, std::uint64_t seed, int max_iter = 20000,
                               double rel_tol = 1e-13);

OperatorNorm operator_norm_singular_kernel(const ScanConfig& cfg, int n, double delta, int k);

/// 2 pi int |P f|^2 / |x|^2 over R^3 for a state whose indices are all even.
/// Throws InputError if any stored coefficient has an odd index component.
double even_3d_functional(const spectral::SpectralState& state, int scale = 1);

/// Number of even alpha with |alpha| = k outside the union of the three index
/// sets {alpha_i >= (sum of the other two) / 2}.
int uncovered_even_indices(int k);

EstimateReport check_odd_identity(const ScanConfig& cfg);
EstimateReport check_radial_3d_identity(const ScanConfig& cfg);
EstimateReport check_kato(const ScanConfig& cfg, int n, double delta, const std::vector<int>& axes);
EstimateReport check_operator_norm(const ScanConfig& cfg, int n, double delta);
EstimateReport check_kernel_bound(const ScanConfig& cfg, int n);
EstimateReport check_morawetz_2d(const ScanConfig& cfg);
EstimateReport check_even_3d(const ScanConfig& cfg);
EstimateReport check_hermite_sobolev(const ScanConfig& cfg, double s);
EstimateReport check_collapse_9d(const ScanConfig& cfg);
EstimateReport check_antideriv_norms(const ScanConfig& cfg);
EstimateReport check_appendix_identities(const ScanConfig& cfg);
/// n = 2, delta = 1: the level-0 functional of a nonzero even state computed
/// with the origin cut out grows under repeated doubling instead of settling.
EstimateReport check_negative_control(const ScanConfig& cfg);

}  // namespace hk::verify
