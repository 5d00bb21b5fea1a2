#include "specgraph/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specgraph/error.hpp"

namespace specgraph {

namespace {

constexpr double kOrthonormalTol = 1e-10;

Eigen::Index largest_magnitude_index(const Eigen::Ref<const Vector>& v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // strict comparison keeps the first index among equal magnitudes
    if (std::abs(v[i]) > best_abs) {
      best_abs = std::abs(v[i]);
      best = i;
    }
  }
  return best;
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(Matrix U) : U_(std::move(U)) {
  if (U_.cols() < 1 || U_.cols() > U_.rows()) {
    fail(ErrorCode::ShapeMismatch, "basis must be n x k with 1 <= k <= n");
  }
  const Matrix gram = U_.transpose() * U_;
  const double dev = (gram - Matrix::Identity(U_.cols(), U_.cols())).cwiseAbs().maxCoeff();
  if (!(dev <= kOrthonormalTol)) {
    fail(ErrorCode::NotOrthonormal, "max |U^T U - I| = " + std::to_string(dev));
  }
}

OrthonormalBasis OrthonormalBasis::rotated(const Matrix& Q) const {
  if (Q.rows() != k() || Q.cols() != k()) fail(ErrorCode::ShapeMismatch, "rotation must be k x k");
  return OrthonormalBasis(U_ * Q);
}

void require_symmetric(const Matrix& M) {
  if (M.rows() != M.cols()) fail(ErrorCode::NotSymmetric, "matrix is not square");
  if (M.size() == 0) return;
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= kSymmetryTolerance)) {
    fail(ErrorCode::NotSymmetric, "max |M - M^T| = " + std::to_string(asym));
  }
}

Eigensystem symmetric_eigensystem(const Matrix& M) {
  require_symmetric(M);
  const auto n = M.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(M, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::NumericalFailure, "symmetric eigensolver did not converge");
  }
  // Eigen returns ascending order; flip to descending.
  Vector values = solver.eigenvalues().reverse();
  Matrix vectors = solver.eigenvectors().rowwise().reverse();

  for (Eigen::Index j = 0; j < n; ++j) {
    const auto idx = largest_magnitude_index(vectors.col(j));
    if (vectors(idx, j) < 0.0) vectors.col(j) *= -1.0;
  }

  // Reorder runs of equal eigenvalues by the largest-magnitude coordinate index.
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double tie_tol = 1e-12 * scale;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && values[end - 1] - values[end] <= tie_tol) ++end;
    if (end - start > 1) {
      std::stable_sort(order.begin() + start, order.begin() + end,
                       [&](Eigen::Index a, Eigen::Index b) {
                         return largest_magnitude_index(vectors.col(a)) <
                                largest_magnitude_index(vectors.col(b));
                       });
    }
    start = end;
  }
  Eigensystem out{Vector(n), Matrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values[j] = values[order[static_cast<std::size_t>(j)]];
    out.vectors.col(j) = vectors.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

Vector symmetric_eigenvalues(const Matrix& M) {
  require_symmetric(M);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(M, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::NumericalFailure, "symmetric eigensolver did not converge");
  }
  return solver.eigenvalues().reverse();
}

double eigengap(const std::vector<double>& descending, int k) {
  const auto n = static_cast<int>(descending.size());
  if (k < 1 || k >= n) {
    fail(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " outside [1, " +
                                     std::to_string(n - 1) + "]");
  }
  const auto kk = static_cast<std::size_t>(k);
  const double below = descending[kk - 1] - descending[kk];
  const double above = k == 1 ? std::numeric_limits<double>::infinity()
                              : descending[kk - 2] - descending[kk - 1];
  return std::max(0.0, std::min(below, above));
}

double eigengap(const Vector& descending, int k) {
  return eigengap(std::vector<double>(descending.data(), descending.data() + descending.size()),
                  k);
}

std::pair<OrthonormalBasis, SpectrumSummary> top_k_eigens(const Matrix& M, int k) {
  require_symmetric(M);
  if (k < 1 || k >= M.rows()) {
    fail(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " outside [1, " +
                                     std::to_string(M.rows() - 1) + "]");
  }
  const Eigensystem es = symmetric_eigensystem(M);
  SpectrumSummary summary;
  summary.eigenvalues.assign(es.values.data(), es.values.data() + es.values.size());
  summary.k = k;
  summary.gap_k = eigengap(summary.eigenvalues, k);
  return {OrthonormalBasis(es.vectors.leftCols(k)), std::move(summary)};
}

double symmetric_operator_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  return symmetric_eigenvalues(M).cwiseAbs().maxCoeff();
}

double grassmann_distance(const OrthonormalBasis& U, const OrthonormalBasis& V) {
  if (U.n() != V.n() || U.k() != V.k()) {
    fail(ErrorCode::ShapeMismatch, "bases have different shapes");
  }
  const Matrix& u = U.matrix();
  const Matrix& v = V.matrix();
  const Matrix residual = v - u * (u.transpose() * v);
  Eigen::JacobiSVD<Matrix> svd(residual);
  const double s = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  return std::clamp(s, 0.0, 1.0);
}

Matrix procrustes_rotation(const Matrix& source, const Matrix& target) {
  if (source.rows() != target.rows() || source.cols() != target.cols()) {
    fail(ErrorCode::ShapeMismatch, "procrustes inputs have different shapes");
  }
  const Matrix cross = source.transpose() * target;
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

ProcrustesResult procrustes_align(const OrthonormalBasis& U_hat, const OrthonormalBasis& U_star) {
  if (U_hat.n() != U_star.n() || U_hat.k() != U_star.k()) {
    fail(ErrorCode::ShapeMismatch, "bases have different shapes");
  }
  Matrix Q = procrustes_rotation(U_hat.matrix(), U_star.matrix());
  Matrix aligned = U_hat.matrix() * Q;
  const double residual = (aligned - U_star.matrix()).norm();
  return ProcrustesResult{std::move(Q), OrthonormalBasis(std::move(aligned)), residual};
}

double weyl_gap_certificate(double gap_hat, double eps_P) {
  if (!(gap_hat >= 0.0) || !(eps_P >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "gap_hat and eps_P must be nonnegative");
  }
  return std::max(gap_hat - 2.0 * eps_P, 0.0);
}

double frobenius_subspace_bound(double r, int k) {
  if (!(r >= 0.0) || k < 1) fail(ErrorCode::InvalidArgument, "requires r >= 0 and k >= 1");
  return 2.0 * k * r * r;
}

}  // namespace specgraph
