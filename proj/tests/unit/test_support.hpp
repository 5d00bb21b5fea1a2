#pragma once

// Small hand-rolled generators shared by the property tests.

#include <cmath>
#include <vector>

#include "specgraph/graph.hpp"
#include "specgraph/linalg.hpp"
#include "specgraph/rng.hpp"

namespace testsupport {

using specgraph::Matrix;
using specgraph::Rng;
using specgraph::Vector;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(specgraph::uniform01(rng) * (hi - lo + 1));
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * specgraph::uniform01(rng);
}

inline Matrix gaussian(Rng& rng, Eigen::Index r, Eigen::Index c) {
  Matrix M(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) M(i, j) = specgraph::standard_normal(rng);
  return M;
}

inline Matrix random_symmetric(Rng& rng, Eigen::Index n) {
  Matrix G = gaussian(rng, n, n);
  return 0.5 * (G + G.transpose());
}

inline Matrix random_orthogonal(Rng& rng, Eigen::Index k) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rng, k, k));
  return qr.householderQ() * Matrix::Identity(k, k);
}

inline specgraph::OrthonormalBasis random_basis(Rng& rng, Eigen::Index n, Eigen::Index k) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rng, n, k));
  return specgraph::OrthonormalBasis(qr.householderQ() * Matrix::Identity(n, k));
}

// Random probability matrix with zero diagonal.
inline Matrix random_probability(Rng& rng, Eigen::Index n) {
  Matrix P = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < j; ++i) P(i, j) = P(j, i) = specgraph::uniform01(rng);
  return P;
}

inline std::vector<int> random_labels(Rng& rng, int n, int K) {
  std::vector<int> g(static_cast<std::size_t>(n));
  for (auto& x : g) x = uniform_int(rng, 0, K - 1);
  return g;
}

}  // namespace testsupport
