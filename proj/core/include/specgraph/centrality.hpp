#pragma once

#include <string>

#include "specgraph/graph.hpp"

namespace specgraph {

/// Katz scores (I - beta M)^{-1} 1 - 1 on the domain rho(M) <= 1/(2 beta).
/// Outside that domain throws OutsideDomain carrying rho and the limit.
Vector katz_centrality(const Matrix& M, double beta);

/// Lipschitz modulus 4 beta of Katz centrality on its domain.
double katz_modulus(double beta);

/// Spectral radius of a symmetric matrix.
double spectral_radius(const Matrix& M);

struct EigenvectorCentrality {
  Vector scores;       // unit top eigenvector, <v, 1> >= 0
  double gamma = 0.0;  // observed lambda_1 - lambda_2
};

/// Throws DegenerateTopEigenvalue when lambda_1 is not simple.
EigenvectorCentrality eigenvector_centrality(const Matrix& M);

/// Lipschitz modulus 2 / gamma of eigenvector centrality on {gap >= gamma}.
double eigenvector_modulus(double gamma);

enum class CentralityKind { Katz, Eigenvector };

struct CentralityFunctional {
  CentralityKind kind = CentralityKind::Katz;
  double parameter = 0.0;  // beta for Katz, declared gamma for eigenvector

  std::string tag() const;  // "katz(beta)" / "eigenvector(gamma)"
};

/// Simultaneous intervals [point_i - L q, point_i + L q].
struct CentralityBand {
  Vector point;
  double half_width = 0.0;
  double alpha = 0.0;
  CentralityFunctional functional;
  bool domain_certified = false;

  Vector lower() const;
  Vector upper() const;
  /// True iff every coordinate of `truth` lies in its interval.
  bool contains(const Vector& truth) const;
};

CentralityBand centrality_bands(const Vector& point, double modulus, double q, double alpha,
                                CentralityFunctional functional = {},
                                bool domain_certified = true);

}  // namespace specgraph
