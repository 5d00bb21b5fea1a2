#pragma once

#include <utility>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

/// n x k matrix with orthonormal columns (U^T U = I_k within 1e-10 max-abs).
class OrthonormalBasis {
 public:
  OrthonormalBasis() = default;
  /// Throws NotOrthonormal if U^T U deviates from I_k by more than 1e-10.
  explicit OrthonormalBasis(Matrix U);

  const Matrix& matrix() const noexcept { return U_; }
  Eigen::Index n() const noexcept { return U_.rows(); }
  Eigen::Index k() const noexcept { return U_.cols(); }

  /// Right-multiplication by a k x k orthogonal matrix.
  OrthonormalBasis rotated(const Matrix& Q) const;

 private:
  Matrix U_;
};

struct SpectrumSummary {
  std::vector<double> eigenvalues;  // descending
  int k = 0;
  double gap_k = 0.0;
};

/// Full symmetric eigendecomposition with descending eigenvalues and the
/// deterministic ordering/sign convention used everywhere in the library.
struct Eigensystem {
  Vector values;   // descending
  Matrix vectors;  // column j pairs with values[j]
};

constexpr double kSymmetryTolerance = 1e-10;

/// Throws NotSymmetric if max |M - M^T| > 1e-10 (or M is not square).
void require_symmetric(const Matrix& M);

/// Dense eigendecomposition of a symmetric matrix. Within a group of equal
/// eigenvalues, vectors are ordered by the index of their largest-magnitude
/// coordinate; each vector's largest-magnitude coordinate is made positive.
Eigensystem symmetric_eigensystem(const Matrix& M);

/// Eigenvalues only, descending.
Vector symmetric_eigenvalues(const Matrix& M);

/// gap_k = min(l_k - l_{k+1}, l_{k-1} - l_k) with l_0 = +inf (1-based k).
double eigengap(const std::vector<double>& descending, int k);
double eigengap(const Vector& descending, int k);

std::pair<OrthonormalBasis, SpectrumSummary> top_k_eigens(const Matrix& M, int k);

/// Operator norm of a symmetric matrix (largest absolute eigenvalue).
double symmetric_operator_norm(const Matrix& M);

/// ||U U^T - V V^T||, in [0,1]. Computed as the largest singular value of
/// (I - U U^T) V, which equals the projector distance for equal dimensions.
double grassmann_distance(const OrthonormalBasis& U, const OrthonormalBasis& V);

struct ProcrustesResult {
  Matrix rotation;          // k x k orthogonal Q minimizing ||U_hat Q - U_star||_F
  OrthonormalBasis aligned; // U_hat Q
  double residual = 0.0;    // ||U_hat Q - U_star||_F
};

ProcrustesResult procrustes_align(const OrthonormalBasis& U_hat, const OrthonormalBasis& U_star);

/// Same alignment against an arbitrary n x k target (rows need not be orthonormal).
Matrix procrustes_rotation(const Matrix& source, const Matrix& target);

/// (gap_hat - 2 eps_P)_+, the Weyl transfer of an estimated gap.
double weyl_gap_certificate(double gap_hat, double eps_P);

/// Bound on min_Q ||U_hat Q - U_star||_F^2 given d_Gr <= r: 2 k r^2.
double frobenius_subspace_bound(double r, int k);

}  // namespace specgraph
