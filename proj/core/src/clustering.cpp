#include "specgraph/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "specgraph/error.hpp"

namespace specgraph {

namespace {

constexpr int kMaxExactLabels = 8;

int label_count(const Labels& g, const Labels& h) {
  if (g.size() != h.size()) fail(ErrorCode::ShapeMismatch, "assignments differ in length");
  int K = 0;
  for (int v : g) {
    if (v < 0) fail(ErrorCode::InvalidArgument, "labels must be nonnegative");
    K = std::max(K, v + 1);
  }
  for (int v : h) {
    if (v < 0) fail(ErrorCode::InvalidArgument, "labels must be nonnegative");
    K = std::max(K, v + 1);
  }
  return K;
}

// confusion(a, b) = #{i : g(i) = a, h(i) = b}
std::vector<std::vector<int>> confusion(const Labels& g, const Labels& h, int K) {
  std::vector<std::vector<int>> c(static_cast<std::size_t>(K),
                                  std::vector<int>(static_cast<std::size_t>(K), 0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    ++c[static_cast<std::size_t>(g[i])][static_cast<std::size_t>(h[i])];
  }
  return c;
}

// Hungarian algorithm (shortest augmenting path, potentials) on a square cost
// matrix; returns the minimum total cost.
long long min_cost_assignment(const std::vector<std::vector<long long>>& cost) {
  const int K = static_cast<int>(cost.size());
  constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(K + 1, 0), v(K + 1, 0);
  std::vector<int> p(K + 1, 0), way(K + 1, 0);
  for (int i = 1; i <= K; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<long long> minv(K + 1, kInf);
    std::vector<bool> used(K + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      long long delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= K; ++j) {
        if (used[j]) continue;
        const long long cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= K; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  long long total = 0;
  for (int j = 1; j <= K; ++j) total += cost[p[j] - 1][j - 1];
  return total;
}

double squared_distance(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                        const Eigen::Ref<const Eigen::RowVectorXd>& b) {
  return (a - b).squaredNorm();
}

Labels assign(const Matrix& rows, const Matrix& centers) {
  Labels labels(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index a = 0; a < centers.rows(); ++a) {
      const double d = squared_distance(rows.row(i), centers.row(a));
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(a);
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
  }
  return labels;
}

// ceil with a 1e-12 relative snap, so that a radius which is an integer in
// exact arithmetic does not round up on floating-point noise.
int ceil_clamped(double value, int n) {
  if (!std::isfinite(value) || value >= static_cast<double>(n)) return n;
  const double nearest = std::round(value);
  if (std::abs(value - nearest) <= 1e-12 * std::max(1.0, std::abs(value))) {
    return std::min(n, static_cast<int>(nearest));
  }
  return std::min(n, static_cast<int>(std::ceil(value)));
}

}  // namespace

Labels nearest_center_round(const Matrix& rows, const Matrix& centers) {
  if (centers.rows() < 2) fail(ErrorCode::InvalidArgument, "need at least two centers");
  if (rows.cols() != centers.cols()) {
    fail(ErrorCode::ShapeMismatch, "rows and centers have different widths");
  }
  for (Eigen::Index a = 0; a < centers.rows(); ++a) {
    for (Eigen::Index b = a + 1; b < centers.rows(); ++b) {
      if (squared_distance(centers.row(a), centers.row(b)) == 0.0) {
        fail(ErrorCode::DuplicateCenters, "centers " + std::to_string(a) + " and " +
                                              std::to_string(b) + " coincide");
      }
    }
  }
  return assign(rows, centers);
}

int perm_hamming_distance_exhaustive(const Labels& g, const Labels& h) {
  const int K = label_count(g, h);
  if (K > kMaxExactLabels) {
    fail(ErrorCode::TooManyLabelsForExact,
         std::to_string(K) + " labels exceed the exhaustive limit of " +
             std::to_string(kMaxExactLabels));
  }
  if (g.empty()) return 0;
  const auto c = confusion(g, h, K);
  std::vector<int> pi(static_cast<std::size_t>(K));
  std::iota(pi.begin(), pi.end(), 0);
  int best_agree = 0;
  do {
    int agree = 0;
    // g(i) = pi(h(i))
    for (int b = 0; b < K; ++b) agree += c[static_cast<std::size_t>(pi[b])][b];
    best_agree = std::max(best_agree, agree);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return static_cast<int>(g.size()) - best_agree;
}

int perm_hamming_distance(const Labels& g, const Labels& h) {
  const int K = label_count(g, h);
  if (K <= kMaxExactLabels) return perm_hamming_distance_exhaustive(g, h);
  const auto c = confusion(g, h, K);
  std::vector<std::vector<long long>> cost(static_cast<std::size_t>(K),
                                           std::vector<long long>(static_cast<std::size_t>(K)));
  for (int a = 0; a < K; ++a) {
    for (int b = 0; b < K; ++b) cost[a][b] = -static_cast<long long>(c[a][b]);
  }
  return static_cast<int>(g.size()) + static_cast<int>(min_cost_assignment(cost));
}

RoundingBound rounding_error_bound(double eta, double margin, int n) {
  if (!(margin > 0.0)) fail(ErrorCode::NonpositiveMargin, "margin must be positive");
  if (!(eta >= 0.0)) fail(ErrorCode::InvalidArgument, "row error must be nonnegative");
  if (n < 0) fail(ErrorCode::InvalidArgument, "n must be nonnegative");
  RoundingBound out;
  out.exact = eta < margin / 4.0;
  out.hamming_bound = ceil_clamped(16.0 * n * eta * eta / (margin * margin), n);
  return out;
}

double center_margin(const Matrix& centers) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < centers.rows(); ++a) {
    for (Eigen::Index b = a + 1; b < centers.rows(); ++b) {
      best = std::min(best, (centers.row(a) - centers.row(b)).norm());
    }
  }
  return best;
}

Matrix class_centers(const Matrix& embedding, const Labels& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != embedding.rows()) {
    fail(ErrorCode::ShapeMismatch, "labels and embedding differ in length");
  }
  int K = 0;
  for (int v : labels) K = std::max(K, v + 1);
  Matrix centers = Matrix::Zero(K, embedding.cols());
  std::vector<bool> seen(static_cast<std::size_t>(K), false);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto a = static_cast<std::size_t>(labels[i]);
    if (!seen[a]) {
      centers.row(labels[i]) = embedding.row(static_cast<Eigen::Index>(i));
      seen[a] = true;
    }
  }
  return centers;
}

KMeansResult kmeans(const Matrix& rows, int K, int restarts, int max_iterations) {
  const auto n = rows.rows();
  if (K < 1 || K > n) fail(ErrorCode::InvalidArgument, "K must be in [1, n]");
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  const int runs = std::max(1, std::min<int>(restarts, static_cast<int>(n)));
  for (int run = 0; run < runs; ++run) {
    // Farthest-point seeding from a deterministic, run-dependent first point.
    Matrix centroids(K, rows.cols());
    const Eigen::Index first = (static_cast<Eigen::Index>(run) * n) / runs;
    centroids.row(0) = rows.row(first);
    Vector nearest = Vector::Constant(n, std::numeric_limits<double>::infinity());
    for (int c = 1; c < K; ++c) {
      for (Eigen::Index i = 0; i < n; ++i) {
        nearest[i] = std::min(nearest[i], squared_distance(rows.row(i), centroids.row(c - 1)));
      }
      Eigen::Index far = 0;
      nearest.maxCoeff(&far);
      centroids.row(c) = rows.row(far);
    }
    Labels labels = assign(rows, centroids);
    for (int it = 0; it < max_iterations; ++it) {
      Matrix sums = Matrix::Zero(K, rows.cols());
      std::vector<int> counts(static_cast<std::size_t>(K), 0);
      for (Eigen::Index i = 0; i < n; ++i) {
        sums.row(labels[i]) += rows.row(i);
        ++counts[static_cast<std::size_t>(labels[i])];
      }
      for (int c = 0; c < K; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) {
          centroids.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
        }
      }
      Labels next = assign(rows, centroids);
      if (next == labels) break;
      labels = std::move(next);
    }
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      inertia += squared_distance(rows.row(i), centroids.row(labels[i]));
    }
    if (inertia < best.inertia) {
      best = KMeansResult{std::move(labels), centroids, inertia};
    }
  }
  return best;
}

Matrix align_to_centers(const Matrix& rows, const Matrix& centers) {
  const auto K = static_cast<int>(centers.rows());
  const auto k = rows.cols();
  if (centers.cols() != k) fail(ErrorCode::ShapeMismatch, "centers must be K x k");
  if (K > kMaxExactLabels) {
    fail(ErrorCode::TooManyLabelsForExact, "center matching enumerates at most 8 clusters");
  }
  const KMeansResult km = kmeans(rows, K);
  std::vector<int> counts(static_cast<std::size_t>(K), 0);
  for (int v : km.labels) ++counts[static_cast<std::size_t>(v)];

  // Match empirical clusters to declared centers and fit one rotation per
  // matching (weighted by cluster size); keep the best fit.
  std::vector<int> pi(static_cast<std::size_t>(K));
  std::iota(pi.begin(), pi.end(), 0);
  Matrix best_Q = Matrix::Identity(k, k);
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    Matrix source(K, k), target(K, k);
    for (int a = 0; a < K; ++a) {
      const double w = std::sqrt(static_cast<double>(counts[static_cast<std::size_t>(a)]));
      source.row(a) = w * km.centroids.row(a);
      target.row(a) = w * centers.row(pi[static_cast<std::size_t>(a)]);
    }
    const Matrix Q = procrustes_rotation(source, target);
    const double cost = (source * Q - target).squaredNorm();
    if (cost < best_cost) {
      best_cost = cost;
      best_Q = Q;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));

  // Alternate assignment and Procrustes until the labels settle.
  Labels labels = assign(rows * best_Q, centers);
  for (int it = 0; it < 50; ++it) {
    Matrix target(rows.rows(), k);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) target.row(i) = centers.row(labels[i]);
    best_Q = procrustes_rotation(rows, target);
    Labels next = assign(rows * best_Q, centers);
    if (next == labels) break;
    labels = std::move(next);
  }
  return best_Q;
}

ClusterRegion cluster_region(const SubspaceRegion& region, const ClusteringInputs& inputs) {
  if (!(inputs.margin > 0.0)) {
    fail(ErrorCode::NonpositiveMargin, "declared margin must be positive");
  }
  const Matrix& Uhat = region.center.matrix();
  const auto n = static_cast<int>(Uhat.rows());
  const auto k = static_cast<int>(Uhat.cols());

  ClusterRegion out;
  out.alpha = region.alpha;
  out.margin_used = inputs.margin;
  out.subspace_radius = region.radius;

  if (inputs.centers) {
    const Matrix& centers = *inputs.centers;
    if (centers.cols() != k) fail(ErrorCode::ShapeMismatch, "centers must have k columns");
    Matrix aligned;
    if (inputs.reference) {
      aligned = procrustes_align(region.center, *inputs.reference).aligned.matrix();
    } else {
      aligned = Uhat * align_to_centers(Uhat, centers);
    }
    out.labels = nearest_center_round(aligned, centers);
    out.margin_provenance = "declared-centers";
  } else {
    out.labels = kmeans(Uhat, inputs.num_clusters).labels;
    out.margin_provenance = "declared-assumption";
  }

  const double delta2 = inputs.margin * inputs.margin;
  const double frob = frobenius_subspace_bound(region.radius, k);
  out.mean_square_radius = ceil_clamped(16.0 * frob / delta2, n);
  out.hamming_radius = out.mean_square_radius;
  if (inputs.c_row) {
    if (!(*inputs.c_row > 0.0)) fail(ErrorCode::InvalidArgument, "c_row must be positive");
    const double eta = *inputs.c_row * region.radius;
    const RoundingBound rb = rounding_error_bound(eta, inputs.margin, n);
    out.rowwise_radius = rb.exact ? 0 : rb.hamming_bound;
    out.hamming_radius = std::min(out.hamming_radius, *out.rowwise_radius);
  }
  out.vacuous = out.hamming_radius >= n;
  return out;
}

ClusterRegion cluster_region(const AdjacencyMatrix& A, int k,
                             const SubspaceCertificates& certificates, double alpha,
                             const ClusteringInputs& inputs) {
  if (!(inputs.margin > 0.0)) {
    fail(ErrorCode::NonpositiveMargin, "declared margin must be positive");
  }
  return cluster_region(subspace_region(A, k, certificates, alpha), inputs);
}

}  // namespace specgraph
