#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specgraph/subspace_region.hpp"

namespace specgraph {

using Labels = std::vector<int>;

/// argmin_a ||row_i - center_a||_2, ties to the lowest center index.
/// Throws DuplicateCenters if two centers coincide, InvalidArgument if K < 2.
Labels nearest_center_round(const Matrix& rows, const Matrix& centers);

/// min over label permutations of #{i : g(i) != pi(h(i))}. Exhaustive for
/// K <= 8 labels, optimal assignment on the confusion matrix beyond that.
int perm_hamming_distance(const Labels& g, const Labels& h);

/// Exhaustive enumeration only; throws TooManyLabelsForExact when K > 8.
int perm_hamming_distance_exhaustive(const Labels& g, const Labels& h);

struct RoundingBound {
  bool exact = false;     // eta < Delta / 4: nearest-center rounding is exact
  int hamming_bound = 0;  // min(n, ceil(16 n eta^2 / Delta^2))
};

RoundingBound rounding_error_bound(double eta, double margin, int n);

/// Smallest pairwise distance between rows of `centers`.
double center_margin(const Matrix& centers);

/// Population centers of an embedding whose rows are constant within each
/// label class (row of the first member of each class).
Matrix class_centers(const Matrix& embedding, const Labels& labels);

struct ClusteringInputs {
  double margin = 0.0;                       // declared Delta
  std::optional<Matrix> centers;             // K x k population centers
  int num_clusters = 2;                      // used when centers are absent
  std::optional<OrthonormalBasis> reference; // U_star when known (oracle mode)
  std::optional<double> c_row;               // rowwise certificate, enables the uniform branch
};

struct ClusterRegion {
  Labels labels;
  int hamming_radius = 0;
  double alpha = 0.0;
  double margin_used = 0.0;
  double subspace_radius = 0.0;
  int mean_square_radius = 0;            // ceil(16 * 2k r^2 / Delta^2), clamped at n
  std::optional<int> rowwise_radius;     // present when c_row was supplied
  bool vacuous = false;                  // radius == n: every assignment is in the ball
  std::string margin_provenance;         // "declared-centers" or "declared-assumption"
};

/// Hamming-ball confidence region for the latent assignment.
ClusterRegion cluster_region(const AdjacencyMatrix& A, int k,
                             const SubspaceCertificates& certificates, double alpha,
                             const ClusteringInputs& inputs);

/// Same, from an already computed subspace region (avoids a second eigensolve).
ClusterRegion cluster_region(const SubspaceRegion& region, const ClusteringInputs& inputs);

/// Lloyd iterations from farthest-point seeds; deterministic. The returned
/// centroids are K x k.
struct KMeansResult {
  Labels labels;
  Matrix centroids;
  double inertia = 0.0;
};
KMeansResult kmeans(const Matrix& rows, int K, int restarts = 50, int max_iterations = 100);

/// Rotation Q aligning rows to declared centers without knowing U_star:
/// k-means clusters are matched to centers and Q is refined by alternating
/// Procrustes and nearest-center assignment.
Matrix align_to_centers(const Matrix& rows, const Matrix& centers);

}  // namespace specgraph
