#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specgraph/centrality.hpp"
#include "specgraph/clustering.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/linalg.hpp"

namespace specgraph {

enum Claim : unsigned {
  kClaimDeviation = 1u << 0,
  kClaimSubspace = 1u << 1,
  kClaimCluster = 1u << 2,
  kClaimCentrality = 1u << 3,
  kClaimAll = 0xFu,
};

/// Parses "all", "deviation", "subspace", "cluster", "centrality" or a
/// comma-separated combination.
unsigned parse_claims(const std::string& text);

enum class CertificateMode {
  Oracle,            // variance bound v(P) and gap_k(P) from the true P
  DeclaredEnvelope,  // d_max and gap_lower taken from the config
};

struct CoverageConfig {
  int k = 2;
  double alpha = 0.1;
  unsigned claims = kClaimAll;
  CertificateMode mode = CertificateMode::Oracle;
  Envelope declared;                 // DeclaredEnvelope mode
  std::optional<double> katz_beta;   // default 1 / (4 rho(P))
  int selection_m = 1;               // top-m stability audit
  double ridge_lambda = 1.0;
  unsigned threads = 1;
};

struct ClaimCoverage {
  std::string claim;
  std::uint64_t replications = 0;
  std::uint64_t hits = 0;
  double empirical_coverage = 0.0;
  double target = 0.0;
  double binomial_sd = 0.0;  // sqrt(alpha (1 - alpha) / replications)

  /// empirical_coverage >= target - sigmas * binomial_sd
  bool meets(double sigmas = 3.0) const;
};

struct AuditCounter {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  double max_excess = -1e300;  // largest lhs - rhs observed

  void record(double lhs, double rhs, double tol);
  void merge(const AuditCounter& other);
};

struct CoverageResult {
  std::uint64_t replications = 0;
  double alpha = 0.0;
  std::uint64_t base_seed = 0;
  std::string mode;
  double quantile = 0.0;
  double variance_bound = 0.0;
  double gap_lower = 0.0;
  double subspace_radius = 0.0;
  bool subspace_certified = false;  // gap_lower > 0; otherwise the trivial radius 1 is used
  bool informative = false;
  std::optional<int> hamming_radius;
  std::optional<double> band_half_width;
  std::optional<double> katz_beta;
  std::vector<ClaimCoverage> claims;
  std::vector<AuditCounter> audits;

  const ClaimCoverage* claim(const std::string& name) const;
  const AuditCounter* audit(const std::string& name) const;
  std::uint64_t total_violations() const;
};

/// Samples `replications` graphs from a model with known P and scores every
/// requested claim against the truth, auditing the deterministic inequalities
/// per sample. Identical (model, config, base_seed) give identical results for
/// any thread count.
CoverageResult coverage_experiment(const ProbabilityModel& model, const CoverageConfig& config,
                                   std::uint64_t replications, std::uint64_t base_seed);

/// Nearest-center rounding of rows within Delta/4 of their centers; counts
/// trials that were not exact.
AuditCounter uniform_rounding_audit(std::uint64_t trials, std::uint64_t seed);

/// Randomized audits of the downstream inequalities.
AuditCounter ridge_audit(std::uint64_t trials, std::uint64_t seed);
AuditCounter fairness_transfer_audit(std::uint64_t trials, std::uint64_t seed,
                                     int draws_per_trial = 1000);
AuditCounter tradeoff_audit(std::uint64_t trials, std::uint64_t seed);
AuditCounter filtration_audit(std::uint64_t trials, std::uint64_t seed);

/// Katz top-m stability under random symmetric perturbations E with
/// ||E|| <= q of M: counts perturbations (inside the Katz domain) whose top-m
/// set differs from that of M. Callers audit instances certified by
/// stability_certificate.
AuditCounter stability_perturbation_audit(const Matrix& M, double beta, int m, double q,
                                          std::uint64_t trials, std::uint64_t seed);

/// Scores x' with ||x' - x||_inf = eps whose unique top-m set drops a member
/// of an admissible top-m set of x. Throws NoTiePresent when x has a unique
/// top-m set.
Vector tie_counterexample(const Vector& x, int m, double eps);

struct CollisionInstance {
  ProbabilityModel model;
  OrthonormalBasis U_a;
  OrthonormalBasis U_b;
};

/// k + 1 equal cliques with edge probability 1/2 (remaining nodes isolated):
/// lambda_k(P) = lambda_{k+1}(P), and U_a, U_b span different k-subsets of the
/// clique indicators, so d_Gr(U_a, U_b) = 1. Throws TooSmall if n < 2k + 2.
CollisionInstance collision_instance(int n, int k);

/// The same cliques with probability 1/2 + delta (k + 1 - c) in clique c;
/// gap_k(P) = (b - 1) delta for clique size b. Requires 0 <= delta <= 1/(2(k+1)).
ProbabilityModel separated_collision_instance(int n, int k, double delta);

struct ModulusAudit {
  std::string functional;
  double stated_modulus = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;    // perturbed matrix left the domain
  double max_ratio_2 = 0.0;     // ||c(M) - c(M')||_2 / ||M - M'||
  double max_ratio_inf = 0.0;   // ||c(M) - c(M')||_inf / ||M - M'||
};

/// Empirical Lipschitz ratios on random symmetric perturbations of entrywise
/// standard deviation `perturbation_scale`. Throws OutsideDomain if a sample
/// is not in the functional's domain. A nonpositive eigenvector parameter
/// means "use each sample's observed gap".
ModulusAudit modulus_audit(const CentralityFunctional& functional,
                           const std::vector<Matrix>& domain_samples, double perturbation_scale,
                           std::uint64_t trials, std::uint64_t seed);

}  // namespace specgraph
