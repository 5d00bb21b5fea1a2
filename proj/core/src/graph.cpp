#include "specgraph/graph.hpp"

#include <cmath>
#include <sstream>

#include "specgraph/error.hpp"
#include "specgraph/rng.hpp"

namespace specgraph {

namespace {

constexpr double kSymmetryTol = 1e-12;

std::string describe_entry(Eigen::Index i, Eigen::Index j, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "P(" << i << "," << j << ") = " << value;
  return os.str();
}

void check_connectivity(const Matrix& B) {
  if (B.rows() != B.cols() || B.rows() == 0) {
    fail(ErrorCode::ShapeMismatch, "connectivity matrix must be square and non-empty");
  }
  if ((B - B.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    fail(ErrorCode::NotSymmetric, "connectivity matrix is not symmetric");
  }
}

// Rejects (never clips) out-of-range off-diagonal entries.
void check_range(const Matrix& P) {
  for (Eigen::Index j = 0; j < P.cols(); ++j) {
    for (Eigen::Index i = 0; i < P.rows(); ++i) {
      if (i == j) continue;
      const double v = P(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        fail(ErrorCode::OutOfRangeProbability, describe_entry(i, j, v));
      }
    }
  }
}

Matrix build_sbm(const SbmSpec& spec) {
  const Matrix& Z = spec.membership;
  check_connectivity(spec.connectivity);
  if (Z.cols() != spec.connectivity.rows()) {
    fail(ErrorCode::ShapeMismatch, "membership has " + std::to_string(Z.cols()) +
                                       " columns but connectivity is " +
                                       std::to_string(spec.connectivity.rows()) + "x" +
                                       std::to_string(spec.connectivity.rows()));
  }
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    int ones = 0;
    for (Eigen::Index a = 0; a < Z.cols(); ++a) {
      const double z = Z(i, a);
      if (z == 1.0) {
        ++ones;
      } else if (z != 0.0) {
        ones = -1;
        break;
      }
    }
    if (ones != 1) {
      fail(ErrorCode::MalformedMembership, "row " + std::to_string(i) + " is not one-hot");
    }
  }
  return Z * spec.connectivity * Z.transpose();
}

Matrix build_dcsbm(const DcsbmSpec& spec) {
  check_connectivity(spec.connectivity);
  const auto n = static_cast<Eigen::Index>(spec.labels.size());
  if (spec.theta.size() != n) {
    fail(ErrorCode::ShapeMismatch, "theta and labels differ in length");
  }
  const auto K = static_cast<int>(spec.connectivity.rows());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (spec.labels[i] < 0 || spec.labels[i] >= K) {
      fail(ErrorCode::MalformedMembership,
           "label " + std::to_string(spec.labels[i]) + " at node " + std::to_string(i) +
               " is outside [0," + std::to_string(K) + ")");
    }
    if (!(spec.theta[i] > 0.0)) {
      fail(ErrorCode::InvalidArgument, "theta must be positive at node " + std::to_string(i));
    }
  }
  Matrix P(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      P(i, j) = spec.theta[i] * spec.theta[j] * spec.connectivity(spec.labels[i], spec.labels[j]);
    }
  }
  return P;
}

Matrix build_rdpg(const RdpgSpec& spec) {
  const auto d = spec.positions.cols();
  if (spec.positive < 0 || spec.negative < 0 || spec.positive + spec.negative != d) {
    fail(ErrorCode::InvalidArgument, "signature (p,q) must satisfy p + q = d = " +
                                         std::to_string(d));
  }
  Vector signs(d);
  for (Eigen::Index c = 0; c < d; ++c) signs[c] = c < spec.positive ? 1.0 : -1.0;
  return spec.positions * signs.asDiagonal() * spec.positions.transpose();
}

}  // namespace

SbmSpec SbmSpec::from_labels(const std::vector<int>& labels, const Matrix& connectivity) {
  const auto K = connectivity.rows();
  Matrix Z = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), K);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= K) {
      fail(ErrorCode::MalformedMembership,
           "label " + std::to_string(labels[i]) + " at node " + std::to_string(i) +
               " is outside [0," + std::to_string(K) + ")");
    }
    Z(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
  }
  return SbmSpec{std::move(Z), connectivity};
}

SbmSpec SbmSpec::from_block_sizes(const std::vector<int>& sizes, const Matrix& connectivity) {
  std::vector<int> labels;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (sizes[b] < 0) fail(ErrorCode::InvalidArgument, "negative block size");
    labels.insert(labels.end(), static_cast<std::size_t>(sizes[b]), static_cast<int>(b));
  }
  return from_labels(labels, connectivity);
}

SbmSpec SbmSpec::equal_blocks(int n, int blocks, double p, double q) {
  if (blocks < 1 || n % blocks != 0) {
    fail(ErrorCode::InvalidArgument, "n must be a positive multiple of the block count");
  }
  Matrix B = Matrix::Constant(blocks, blocks, q);
  B.diagonal().setConstant(p);
  return from_block_sizes(std::vector<int>(static_cast<std::size_t>(blocks), n / blocks), B);
}

std::vector<int> SbmSpec::labels() const {
  std::vector<int> out(static_cast<std::size_t>(membership.rows()));
  for (Eigen::Index i = 0; i < membership.rows(); ++i) {
    Eigen::Index a = 0;
    membership.row(i).maxCoeff(&a);
    out[static_cast<std::size_t>(i)] = static_cast<int>(a);
  }
  return out;
}

AdjacencyMatrix AdjacencyMatrix::from_dense(Matrix A) {
  if (A.rows() != A.cols()) fail(ErrorCode::ShapeMismatch, "adjacency matrix must be square");
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    if (A(j, j) != 0.0) {
      fail(ErrorCode::InvalidArgument, "self-loop at node " + std::to_string(j));
    }
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const double v = A(i, j);
      if (v != 0.0 && v != 1.0) {
        fail(ErrorCode::InvalidArgument, "adjacency entries must be 0 or 1");
      }
      if (v != A(j, i)) fail(ErrorCode::NotSymmetric, "adjacency matrix is not symmetric");
    }
  }
  return AdjacencyMatrix{std::move(A), std::nullopt};
}

AdjacencyMatrix AdjacencyMatrix::from_edges(Eigen::Index n,
                                            const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "graph must have at least one node");
  Matrix A = Matrix::Zero(n, n);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      fail(ErrorCode::InvalidArgument, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                           ") references a node outside [0," +
                                           std::to_string(n) + ")");
    }
    if (u == v) fail(ErrorCode::InvalidArgument, "self-loop at node " + std::to_string(u));
    A(u, v) = 1.0;
    A(v, u) = 1.0;
  }
  return AdjacencyMatrix{std::move(A), std::nullopt};
}

void validate_probability_matrix(const Matrix& P) {
  if (P.rows() != P.cols()) fail(ErrorCode::ShapeMismatch, "P must be square");
  if (P.size() > 0 && (P - P.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    fail(ErrorCode::NotSymmetric, "P is not symmetric");
  }
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    if (P(i, i) != 0.0) fail(ErrorCode::InvalidArgument, "P has a nonzero diagonal");
  }
  check_range(P);
}

ProbabilityModel build_probability_matrix(const ModelSpec& spec, Envelope envelope) {
  Matrix P = std::visit(
      [](const auto& s) -> Matrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SbmSpec>) return build_sbm(s);
        if constexpr (std::is_same_v<T, DcsbmSpec>) return build_dcsbm(s);
        if constexpr (std::is_same_v<T, RdpgSpec>) return build_rdpg(s);
      },
      spec);
  if (P.rows() < 1) fail(ErrorCode::InvalidArgument, "model has no nodes");
  check_range(P);
  P.diagonal().setZero();
  // Z B Z^T and X D X^T are symmetric up to rounding; make it exact.
  P = (0.5 * (P + P.transpose())).eval();
  return ProbabilityModel{std::move(P), spec, envelope};
}

AdjacencyMatrix sample_adjacency(const ProbabilityModel& model, std::uint64_t seed) {
  const auto n = model.n();
  Rng rng(seed);
  Matrix A = Matrix::Zero(n, n);
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const double u = uniform01(rng);
      if (u < model.P(i, j)) {
        A(i, j) = 1.0;
        A(j, i) = 1.0;
      }
    }
  }
  return AdjacencyMatrix{std::move(A), seed};
}

TwoBlockSpectrum two_block_spectrum(int n, double p, double q) {
  if (n % 2 != 0) fail(ErrorCode::OddN, "n = " + std::to_string(n) + " is odd");
  if (n < 4) fail(ErrorCode::InvalidArgument, "n must be at least 4");
  if (!(q >= 0.0 && q <= p && p <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "requires 0 <= q <= p <= 1");
  }
  const double m = n / 2;
  TwoBlockSpectrum s{};
  s.lambda1 = (m - 1.0) * p + m * q;
  s.lambda2 = (m - 1.0) * p - m * q;
  s.lambda_rest = -p;
  // Differences taken in closed form so that q = p gives exactly zero.
  s.gap2 = std::min(2.0 * m * q, m * (p - q));
  return s;
}

double expected_degree_bound(const ProbabilityModel& model) {
  if (model.P.size() == 0) return 0.0;
  return model.P.rowwise().sum().maxCoeff();
}

double expected_degree_bound(const Envelope& envelope) {
  if (!envelope.d_max) fail(ErrorCode::InvalidArgument, "no d_max declared in the envelope");
  return *envelope.d_max;
}

}  // namespace specgraph
