#include "specgraph/subspace_region.hpp"

#include <sstream>

#include "specgraph/error.hpp"

namespace specgraph {

SubspaceRegion subspace_region(const AdjacencyMatrix& A, int k,
                               const SubspaceCertificates& certificates, double alpha) {
  if (!(certificates.gap_lower > 0.0)) {
    std::ostringstream os;
    os << "gap certificate " << certificates.gap_lower << " is not positive";
    fail(ErrorCode::NoGapCertificate, os.str());
  }
  if (!(certificates.variance_bound >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "degree/variance bound must be nonnegative");
  }
  auto [basis, spectrum] = top_k_eigens(A.A, k);
  DeviationQuantile quantile = deviation_quantile(certificates.variance_bound, A.n(), alpha);
  const DavisKahanRadius dk = davis_kahan_radius(quantile.q, certificates.gap_lower);
  return SubspaceRegion{std::move(basis), dk.r,          alpha,   dk.informative,
                        certificates,     std::move(quantile), std::move(spectrum)};
}

bool region_contains(const OrthonormalBasis& U, const SubspaceRegion& region) {
  return grassmann_distance(U, region.center) <= region.radius;
}

}  // namespace specgraph
