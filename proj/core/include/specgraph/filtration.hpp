#pragma once

#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

/// D_ij = ||x_i - x_j||_2 over the rows of X.
Matrix distance_matrix(const Matrix& X);

/// Number of pairs i < j with D_ij <= t. Negative t gives the empty graph.
long long threshold_edge_count(const Matrix& D, double t);

/// Connected components of the threshold graph G_t (isolated nodes count).
int threshold_component_count(const Matrix& D, double t);

/// True iff every edge of G_s(D1) is an edge of G_t(D2).
bool threshold_subgraph(const Matrix& D1, double s, const Matrix& D2, double t);

struct FiltrationLevel {
  double t = 0.0;
  bool lower_inclusion = false;  // G_{t - 2 eta}(X) subset of G_t(Y)
  bool upper_inclusion = false;  // G_t(Y) subset of G_{t + 2 eta}(X)
  long long edges_lower = 0;     // |G_{t - 2 eta}(X)|
  long long edges_y = 0;
  long long edges_upper = 0;
  int components_lower = 0;
  int components_y = 0;
  int components_upper = 0;
};

struct FiltrationReport {
  double eta = 0.0;     // max_i ||x_i - y_i||_2
  double d_filt = 0.0;  // max_ij |D(X)_ij - D(Y)_ij|
  bool d_filt_within = false;  // d_filt <= 2 eta
  std::vector<FiltrationLevel> levels;

  bool all_inclusions_hold() const;
};

/// Audit of the threshold-graph sandwich between two embeddings of equal shape.
FiltrationReport filtration_envelope(const Matrix& X, const Matrix& Y,
                                     const std::vector<double>& t_grid);

struct FiltrationBracket {
  double t = 0.0;
  long long edges_min = 0;  // |G_{t - 2 eta}(X)|
  long long edges_max = 0;  // |G_{t + 2 eta}(X)|
  int components_min = 0;   // components of G_{t + 2 eta}(X)
  int components_max = 0;   // components of G_{t - 2 eta}(X)
};

/// Certified brackets for the edge and component counts of G_t(Y) at every
/// Y whose rows lie within eta of the rows of X.
std::vector<FiltrationBracket> filtration_brackets(const Matrix& X, double eta,
                                                   const std::vector<double>& t_grid);

}  // namespace specgraph
