#pragma once

#include <array>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

/// Group thresholds (theta_0, theta_1). Entries may be +-infinity for the
/// saturated witnesses (all decisions 0 or all 1).
using Thresholds = std::array<double, 2>;

struct FairnessProblem {
  Vector x;            // scores
  Vector y;            // targets in [0,1]
  std::vector<int> s;  // group attribute in {0,1}
  double tau = 1.0;
  double epsilon = 0.0;

  /// Throws InvalidArgument / EmptyGroup / ShapeMismatch on bad input.
  void validate() const;
};

double sigmoid(double z);

/// d_i = sigmoid((x_i - theta_{s_i}) / tau).
Vector logistic_decisions(const Vector& x, const std::vector<int>& s, double tau,
                          const Thresholds& theta);
Vector logistic_decisions(const FairnessProblem& problem, const Thresholds& theta);

/// | mean_{s=0} d - mean_{s=1} d |. Throws EmptyGroup.
double parity_gap(const Vector& decisions, const std::vector<int>& s);

/// (1/n) sum (d_i - y_i)^2.
double quadratic_loss(const Vector& decisions, const Vector& y);

struct FairSolution {
  Thresholds theta{};
  double loss = 0.0;
  double parity = 0.0;
  bool witness = false;  // theta is one of the saturated +-infinity witnesses
};

/// Minimizes the quadratic loss subject to parity_gap <= effective_epsilon by
/// coarse-to-fine grid search on [min x - 10 tau, max x + 10 tau]^2 (3 stages,
/// 101 points per axis). The saturated witnesses are always candidates, so a
/// feasible answer exists. Equal losses resolve to the lexicographically
/// smallest theta. Pass effective_epsilon >= 1 for the unconstrained problem.
FairSolution fair_optimize(const FairnessProblem& problem, double effective_epsilon);

struct TransferCheck {
  bool passes = false;
  double observed_gap = 0.0;
  double required = 0.0;  // epsilon - r / tau
};

/// Parity at the estimate must sit below epsilon - r / tau; then parity at any
/// score vector within sup-distance r is at most epsilon. Throws
/// InsufficientTolerance when epsilon < r / tau.
TransferCheck feasibility_transfer_check(const FairnessProblem& at_estimate,
                                         const Thresholds& theta, double r);

struct TradeoffBounds {
  double loss_gap = 0.0;      // L(d_fair) - L(d_un)
  double bound_l2 = 0.0;      // (2 / sqrt(n)) ||d_fair - d_un||_2
  double bound_l2_n = 0.0;    // (2 / n) ||d_fair - d_un||_2, recorded only
  double bound_shift = 0.0;   // delta_theta / (2 tau)
  bool l2_holds = false;
  bool shift_holds = false;
  bool l2_n_holds = false;
};

TradeoffBounds tradeoff_bounds(const Vector& d_fair, const Vector& d_un, const Vector& y,
                               double tau, double delta_theta);

}  // namespace specgraph
