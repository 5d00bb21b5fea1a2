#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace specgraph {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Stochastic block model: P = Z B Z^T with one-hot membership rows.
struct SbmSpec {
  Matrix membership;    // n x K, each row one-hot
  Matrix connectivity;  // K x K symmetric, entries in [0,1]

  static SbmSpec from_labels(const std::vector<int>& labels, const Matrix& connectivity);
  /// Blocks of the given sizes, laid out contiguously.
  static SbmSpec from_block_sizes(const std::vector<int>& sizes, const Matrix& connectivity);
  /// K contiguous equal blocks with within-probability p and across-probability q.
  static SbmSpec equal_blocks(int n, int blocks, double p, double q);

  std::vector<int> labels() const;
};

/// Degree-corrected SBM: P_ij = theta_i theta_j B_{g_i g_j}.
struct DcsbmSpec {
  Vector theta;
  std::vector<int> labels;
  Matrix connectivity;
};

/// (Generalized) random dot product graph: P = X I_{p,q} X^T.
struct RdpgSpec {
  Matrix positions;  // n x d
  int positive = 0;  // p
  int negative = 0;  // q
};

using ModelSpec = std::variant<SbmSpec, DcsbmSpec, RdpgSpec>;

/// Declared envelope parameters, either of which may be absent.
struct Envelope {
  std::optional<double> d_max;
  std::optional<double> gap_lower;
};

struct ProbabilityModel {
  Matrix P;  // symmetric, zero diagonal, off-diagonal entries in [0,1]
  ModelSpec spec;
  Envelope envelope;

  Eigen::Index n() const { return P.rows(); }
};

struct AdjacencyMatrix {
  Matrix A;  // symmetric 0/1, zero diagonal
  std::optional<std::uint64_t> seed;

  Eigen::Index n() const { return A.rows(); }

  /// Validates the simple-graph invariants; throws InvalidArgument otherwise.
  static AdjacencyMatrix from_dense(Matrix A);
  /// Undirected edge list with 0-based ids; rejects self-loops and ids >= n.
  static AdjacencyMatrix from_edges(Eigen::Index n,
                                    const std::vector<std::pair<int, int>>& edges);
};

/// Materializes P for a model spec. Off-diagonal entries outside [0,1] are
/// rejected with OutOfRangeProbability; the diagonal is forced to zero.
ProbabilityModel build_probability_matrix(const ModelSpec& spec, Envelope envelope = {});

/// Independent Bernoulli(P_ij) draws on the upper triangle, mirrored.
/// Deterministic in (model, seed).
AdjacencyMatrix sample_adjacency(const ProbabilityModel& model, std::uint64_t seed);

struct TwoBlockSpectrum {
  double lambda1;
  double lambda2;
  double lambda_rest;  // multiplicity n - 2
  double gap2;
};

/// Closed-form spectrum of the equal two-block SBM with within-probability p
/// and across-probability q (0 <= q <= p <= 1). Throws OddN for odd n.
TwoBlockSpectrum two_block_spectrum(int n, double p, double q);

/// Maximum expected degree max_i sum_{j != i} P_ij.
double expected_degree_bound(const ProbabilityModel& model);
/// Declared d_max passed through unchanged; InvalidArgument if absent.
double expected_degree_bound(const Envelope& envelope);

/// Checks the ProbabilityModel invariants on a bare matrix (symmetry within
/// 1e-12, zero diagonal, entries in [0,1]). Throws on the first violation.
void validate_probability_matrix(const Matrix& P);

}  // namespace specgraph
