#pragma once

#include <string>

#include "specgraph/graph.hpp"

namespace specgraph {

struct VarianceProxy {
  double v = 0.0;      // max_i sum_{j != i} P_ij (1 - P_ij)
  double p_max = 0.0;  // max_{i<j} P_ij
};

VarianceProxy variance_proxy(const Matrix& P);

/// A (1 - alpha) upper quantile for ||A - P||.
struct DeviationQuantile {
  double q = 0.0;
  double alpha = 0.0;
  double v_bound = 0.0;
  Eigen::Index n = 0;
  std::string method = "bernstein_explicit";
};

/// Matrix-Bernstein tail 2n exp(-(t^2/2)/(v + t/3)) for a sum of independent,
/// centered, symmetric n x n summands of norm <= 1 and variance norm v.
double bernstein_tail(double t, double v_bound, Eigen::Index n);

/// The positive root t of t^2/2 = (v + t/3) log(2n/alpha), i.e. the point
/// where bernstein_tail equals alpha. Throws BadLevel unless 0 < alpha < 1.
DeviationQuantile deviation_quantile(double v_bound, Eigen::Index n, double alpha);

struct DavisKahanRadius {
  double r = 0.0;
  bool informative = false;  // r < 1; the projector distance never exceeds 1
};

/// r = 2 q / gap. Throws NonpositiveGap when gap <= 0.
DavisKahanRadius davis_kahan_radius(double q, double gap);

}  // namespace specgraph
