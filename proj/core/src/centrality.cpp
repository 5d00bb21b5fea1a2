#include "specgraph/centrality.hpp"

#include <cmath>
#include <sstream>

#include "specgraph/error.hpp"
#include "specgraph/linalg.hpp"

namespace specgraph {

double spectral_radius(const Matrix& M) { return symmetric_operator_norm(M); }

Vector katz_centrality(const Matrix& M, double beta) {
  if (!(beta > 0.0)) fail(ErrorCode::InvalidArgument, "beta must be positive");
  require_symmetric(M);
  const double rho = spectral_radius(M);
  const double limit = 1.0 / (2.0 * beta);
  // Relative slack absorbs eigensolver rounding at the boundary.
  if (rho > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "rho(M) = " << rho << " exceeds 1/(2 beta) = " << limit;
    fail(ErrorCode::OutsideDomain, os.str());
  }
  const auto n = M.rows();
  const Matrix system = Matrix::Identity(n, n) - beta * M;
  // On the domain the system is symmetric positive definite (eigenvalues >= 1/2).
  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::NumericalFailure, "Katz system is not positive definite");
  }
  return llt.solve(Vector::Ones(n)) - Vector::Ones(n);
}

double katz_modulus(double beta) {
  if (!(beta > 0.0)) fail(ErrorCode::InvalidArgument, "beta must be positive");
  return 4.0 * beta;
}

EigenvectorCentrality eigenvector_centrality(const Matrix& M) {
  if (M.rows() < 2) fail(ErrorCode::InvalidArgument, "need at least two nodes");
  const Eigensystem es = symmetric_eigensystem(M);
  const double gamma = es.values[0] - es.values[1];
  const double tol = 1e-10 * std::max(1.0, std::abs(es.values[0]));
  if (!(gamma > tol)) {
    std::ostringstream os;
    os << "lambda_1 - lambda_2 = " << gamma << " is not positive";
    fail(ErrorCode::DegenerateTopEigenvalue, os.str());
  }
  Vector v = es.vectors.col(0);
  if (v.sum() < 0.0) v = -v;
  return EigenvectorCentrality{std::move(v), gamma};
}

double eigenvector_modulus(double gamma) {
  if (!(gamma > 0.0)) fail(ErrorCode::NonpositiveGap, "gamma must be positive");
  return 2.0 / gamma;
}

std::string CentralityFunctional::tag() const {
  std::ostringstream os;
  os.precision(17);
  os << (kind == CentralityKind::Katz ? "katz(" : "eigenvector(") << parameter << ")";
  return os.str();
}

Vector CentralityBand::lower() const { return point.array() - half_width; }
Vector CentralityBand::upper() const { return point.array() + half_width; }

bool CentralityBand::contains(const Vector& truth) const {
  if (truth.size() != point.size()) fail(ErrorCode::ShapeMismatch, "score vectors differ in length");
  return ((truth - point).cwiseAbs().array() <= half_width).all();
}

CentralityBand centrality_bands(const Vector& point, double modulus, double q, double alpha,
                                CentralityFunctional functional, bool domain_certified) {
  if (!(modulus >= 0.0) || !(q >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "modulus and deviation bound must be nonnegative");
  }
  return CentralityBand{point, modulus * q, alpha, functional, domain_certified};
}

}  // namespace specgraph
