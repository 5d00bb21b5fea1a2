#include "specgraph/ridge.hpp"

#include "specgraph/error.hpp"

namespace specgraph {

double lipschitz_propagate(double r, double L_phi) {
  if (!(r >= 0.0) || !(L_phi >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "radius and modulus must be nonnegative");
  }
  return L_phi * r;
}

double ridge_risk(const OrthonormalBasis& U, const Vector& y, double lambda) {
  if (y.size() != U.n()) fail(ErrorCode::ShapeMismatch, "response length differs from n");
  if (!(lambda > 0.0)) fail(ErrorCode::InvalidArgument, "lambda must be positive");
  const Matrix& u = U.matrix();
  const Vector fitted = (u * (u.transpose() * y)) / (1.0 + lambda);
  return (y - fitted).squaredNorm() / static_cast<double>(y.size());
}

double ridge_risk_bound(const Vector& y, double lambda, double r, Eigen::Index n) {
  if (!(lambda > 0.0)) fail(ErrorCode::InvalidArgument, "lambda must be positive");
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be positive");
  return 2.0 * y.squaredNorm() * r / (static_cast<double>(n) * (1.0 + lambda));
}

}  // namespace specgraph
