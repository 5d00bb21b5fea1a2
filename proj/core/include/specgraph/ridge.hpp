#pragma once

#include "specgraph/linalg.hpp"

namespace specgraph {

/// Image radius L_phi * r of a Grassmann ball under an L_phi-Lipschitz map.
double lipschitz_propagate(double r, double L_phi);

/// In-sample risk (1/n) ||y - (1 + lambda)^{-1} U U^T y||^2 of ridge
/// regression on an orthonormal design.
double ridge_risk(const OrthonormalBasis& U, const Vector& y, double lambda);

/// 2 ||y||^2 r / (n (1 + lambda)): bounds |R(U) - R(V)| whenever d_Gr(U, V) <= r.
double ridge_risk_bound(const Vector& y, double lambda, double r, Eigen::Index n);

}  // namespace specgraph
