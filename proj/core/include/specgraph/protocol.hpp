#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specgraph/centrality.hpp"
#include "specgraph/clustering.hpp"
#include "specgraph/fairness.hpp"
#include "specgraph/filtration.hpp"
#include "specgraph/selection.hpp"
#include "specgraph/subspace_region.hpp"

namespace specgraph {

struct UsvtConfig {
  double threshold_scale = 2.02;
  std::optional<double> eps_P;  // certified ||P_hat - P|| bound; never invented
};

struct CentralityConfig {
  CentralityKind kind = CentralityKind::Katz;
  double beta = 0.0;                       // Katz
  std::optional<double> rho_bound;         // declared rho(P) upper bound (Katz domain)
  std::optional<double> gamma;             // declared gap_1(P) lower bound (eigenvector)
};

struct ClusteringConfig {
  std::optional<double> margin;            // Delta
  std::optional<Matrix> centers;
  std::optional<double> c_row;
  int num_clusters = 2;
};

struct FairnessConfig {
  Vector y;
  std::vector<int> s;
  double tau = 1.0;
  double epsilon = 0.1;
};

struct ProtocolConfig {
  int k = 0;
  double alpha = 0.05;
  Envelope envelope;
  std::optional<ModelSpec> parametric_spec;
  std::optional<UsvtConfig> usvt;
  std::optional<CentralityConfig> centrality;
  std::optional<ClusteringConfig> clustering;
  std::optional<int> selection_m;
  std::optional<FairnessConfig> fairness;
  std::optional<std::vector<double>> t_grid;
};

/// Parses the config JSON documented in the README. "k" is mandatory.
ProtocolConfig parse_protocol_config(const std::string& json_text);

/// Empirical gap of A's spectrum at k. Diagnostic only, never a certificate.
double observed_gap_proxy(const AdjacencyMatrix& A, int k);

/// Exact gap_k(P) of a declared SBM or DCSBM: closed form for the equal
/// two-block SBM, dense eigendecomposition of the built P otherwise. Other
/// model families throw UnsupportedSpec.
double parametric_gap_certificate(const ModelSpec& spec, int k);

/// Universal singular value thresholding: drop eigencomponents with
/// |lambda| < threshold_scale * sqrt(n * density), clip to [0,1], zero diagonal.
Matrix usvt_denoise(const AdjacencyMatrix& A, double threshold_scale = 2.02);

struct FlagStatus {
  bool pass = false;
  std::string provenance;  // where the certificate came from, or why it failed
};

struct Refusal {
  std::string output;  // "subspace_region", "centrality_bands", ...
  std::string reason;  // machine-readable reason code
};

struct FairnessOutput {
  double band_radius = 0.0;
  double effective_epsilon = 0.0;
  FairSolution solution;
  TransferCheck transfer;
};

struct FiltrationOutput {
  double eta = 0.0;  // c_row * subspace radius
  std::vector<FiltrationBracket> brackets;
};

struct DiagnosticReport {
  int k = 0;
  Eigen::Index n = 0;
  double alpha = 0.0;
  FlagStatus d1, d2, d3, d4;
  double observed_gap_proxy = 0.0;
  std::optional<DeviationQuantile> quantile;
  std::optional<double> gap_certificate;
  /// ||A - P_hat|| + eps_P when USVT and eps_P are configured. Not certified.
  std::optional<double> uncertified_deviation_bound;

  std::optional<SubspaceRegion> subspace;
  std::optional<CentralityBand> bands;
  std::optional<StabilityCertificate> stability;
  std::optional<ClusterRegion> cluster;
  std::optional<FairnessOutput> fairness;
  std::optional<FiltrationOutput> filtration;
  std::vector<Refusal> refusals;
};

/// Runs the certified pipeline. Every output is gated on its prerequisite
/// flags; failed certificates produce refusals, not errors.
DiagnosticReport run_protocol(const AdjacencyMatrix& A, const ProtocolConfig& config);

}  // namespace specgraph
