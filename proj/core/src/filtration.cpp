#include "specgraph/filtration.hpp"

#include <cmath>
#include <numeric>

#include "specgraph/error.hpp"

namespace specgraph {

namespace {

bool is_edge(const Matrix& D, Eigen::Index i, Eigen::Index j, double t) {
  return t >= 0.0 && D(i, j) <= t;
}

struct UnionFind {
  std::vector<int> parent;
  int components;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)), components(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
};

}  // namespace

Matrix distance_matrix(const Matrix& X) {
  const auto n = X.rows();
  Matrix D = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      D(i, j) = D(j, i) = (X.row(i) - X.row(j)).norm();
    }
  }
  return D;
}

long long threshold_edge_count(const Matrix& D, double t) {
  long long count = 0;
  for (Eigen::Index j = 0; j < D.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) count += is_edge(D, i, j, t) ? 1 : 0;
  }
  return count;
}

int threshold_component_count(const Matrix& D, double t) {
  UnionFind uf(static_cast<int>(D.rows()));
  for (Eigen::Index j = 0; j < D.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (is_edge(D, i, j, t)) uf.unite(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return uf.components;
}

bool threshold_subgraph(const Matrix& D1, double s, const Matrix& D2, double t) {
  if (D1.rows() != D2.rows()) fail(ErrorCode::ShapeMismatch, "distance matrices differ in size");
  for (Eigen::Index j = 0; j < D1.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (is_edge(D1, i, j, s) && !is_edge(D2, i, j, t)) return false;
    }
  }
  return true;
}

bool FiltrationReport::all_inclusions_hold() const {
  for (const auto& level : levels) {
    if (!level.lower_inclusion || !level.upper_inclusion) return false;
  }
  return d_filt_within;
}

FiltrationReport filtration_envelope(const Matrix& X, const Matrix& Y,
                                     const std::vector<double>& t_grid) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) {
    fail(ErrorCode::ShapeMismatch, "embeddings differ in shape");
  }
  const Matrix DX = distance_matrix(X);
  const Matrix DY = distance_matrix(Y);
  FiltrationReport out;
  out.eta = X.rows() == 0 ? 0.0 : (X - Y).rowwise().norm().maxCoeff();
  out.d_filt = X.rows() == 0 ? 0.0 : (DX - DY).cwiseAbs().maxCoeff();
  out.d_filt_within = out.d_filt <= 2.0 * out.eta;
  const double w = 2.0 * out.eta;
  for (double t : t_grid) {
    FiltrationLevel level;
    level.t = t;
    level.lower_inclusion = threshold_subgraph(DX, t - w, DY, t);
    level.upper_inclusion = threshold_subgraph(DY, t, DX, t + w);
    level.edges_lower = threshold_edge_count(DX, t - w);
    level.edges_y = threshold_edge_count(DY, t);
    level.edges_upper = threshold_edge_count(DX, t + w);
    level.components_lower = threshold_component_count(DX, t - w);
    level.components_y = threshold_component_count(DY, t);
    level.components_upper = threshold_component_count(DX, t + w);
    out.levels.push_back(level);
  }
  return out;
}

std::vector<FiltrationBracket> filtration_brackets(const Matrix& X, double eta,
                                                   const std::vector<double>& t_grid) {
  if (!(eta >= 0.0)) fail(ErrorCode::InvalidArgument, "eta must be nonnegative");
  const Matrix D = distance_matrix(X);
  std::vector<FiltrationBracket> out;
  for (double t : t_grid) {
    FiltrationBracket b;
    b.t = t;
    b.edges_min = threshold_edge_count(D, t - 2.0 * eta);
    b.edges_max = threshold_edge_count(D, t + 2.0 * eta);
    b.components_min = threshold_component_count(D, t + 2.0 * eta);
    b.components_max = threshold_component_count(D, t - 2.0 * eta);
    out.push_back(b);
  }
  return out;
}

}  // namespace specgraph
