#pragma once

#include "specgraph/concentration.hpp"
#include "specgraph/linalg.hpp"

namespace specgraph {

/// Certificates consumed by the subspace region. `variance_bound` is a
/// certified upper bound on v(P): a declared d_max, or v(P) itself when P is
/// known exactly.
struct SubspaceCertificates {
  double variance_bound = 0.0;
  double gap_lower = 0.0;
};

/// Grassmann ball { U : d_Gr(U, center) <= radius }.
struct SubspaceRegion {
  OrthonormalBasis center;
  double radius = 0.0;
  double alpha = 0.0;
  bool informative = false;
  SubspaceCertificates certificates;
  DeviationQuantile quantile;
  SpectrumSummary spectrum;  // of the observed matrix
};

/// Center = top-k basis of A, radius = 2 q / gap_lower. Throws
/// NoGapCertificate when gap_lower <= 0 rather than returning a radius.
SubspaceRegion subspace_region(const AdjacencyMatrix& A, int k,
                               const SubspaceCertificates& certificates, double alpha);

bool region_contains(const OrthonormalBasis& U, const SubspaceRegion& region);

}  // namespace specgraph
