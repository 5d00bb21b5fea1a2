#include "specgraph/fairness.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "specgraph/error.hpp"

namespace specgraph {

namespace {

constexpr int kGridPoints = 101;
constexpr int kStages = 3;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_groups(const std::vector<int>& s, Eigen::Index n) {
  if (static_cast<Eigen::Index>(s.size()) != n) {
    fail(ErrorCode::ShapeMismatch, "group attribute length differs from n");
  }
  int n0 = 0, n1 = 0;
  for (int g : s) {
    if (g == 0) ++n0;
    else if (g == 1) ++n1;
    else fail(ErrorCode::InvalidArgument, "group attribute must be 0 or 1");
  }
  if (n0 == 0 || n1 == 0) fail(ErrorCode::EmptyGroup, "both groups must be nonempty");
}

bool better(double loss, const Thresholds& theta, double best_loss, const Thresholds& best) {
  if (loss != best_loss) return loss < best_loss;
  return theta < best;
}

}  // namespace

void FairnessProblem::validate() const {
  if (x.size() == 0) fail(ErrorCode::InvalidArgument, "empty score vector");
  if (y.size() != x.size()) fail(ErrorCode::ShapeMismatch, "targets differ in length from scores");
  check_groups(s, x.size());
  if (!(tau > 0.0)) fail(ErrorCode::InvalidArgument, "tau must be positive");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "epsilon must lie in [0,1]");
  }
  if (!x.allFinite()) fail(ErrorCode::InvalidArgument, "scores must be finite");
  if (!((y.array() >= 0.0).all() && (y.array() <= 1.0).all())) {
    fail(ErrorCode::InvalidArgument, "targets must lie in [0,1]");
  }
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Vector logistic_decisions(const Vector& x, const std::vector<int>& s, double tau,
                          const Thresholds& theta) {
  if (static_cast<Eigen::Index>(s.size()) != x.size()) {
    fail(ErrorCode::ShapeMismatch, "group attribute length differs from n");
  }
  if (!(tau > 0.0)) fail(ErrorCode::InvalidArgument, "tau must be positive");
  Vector d(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double t = theta[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
    if (t == kInf) d[i] = 0.0;
    else if (t == -kInf) d[i] = 1.0;
    else d[i] = sigmoid((x[i] - t) / tau);
  }
  return d;
}

Vector logistic_decisions(const FairnessProblem& problem, const Thresholds& theta) {
  return logistic_decisions(problem.x, problem.s, problem.tau, theta);
}

double parity_gap(const Vector& decisions, const std::vector<int>& s) {
  if (static_cast<Eigen::Index>(s.size()) != decisions.size()) {
    fail(ErrorCode::ShapeMismatch, "group attribute length differs from n");
  }
  double sum[2] = {0.0, 0.0};
  int count[2] = {0, 0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0 && s[i] != 1) fail(ErrorCode::InvalidArgument, "group attribute must be 0 or 1");
    sum[s[i]] += decisions[static_cast<Eigen::Index>(i)];
    ++count[s[i]];
  }
  if (count[0] == 0 || count[1] == 0) fail(ErrorCode::EmptyGroup, "both groups must be nonempty");
  return std::abs(sum[0] / count[0] - sum[1] / count[1]);
}

double quadratic_loss(const Vector& decisions, const Vector& y) {
  if (decisions.size() != y.size()) fail(ErrorCode::ShapeMismatch, "length mismatch");
  return (decisions - y).squaredNorm() / static_cast<double>(y.size());
}

FairSolution fair_optimize(const FairnessProblem& problem, double effective_epsilon) {
  problem.validate();
  if (!(effective_epsilon >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "effective epsilon must be nonnegative");
  }

  FairSolution best;
  best.loss = kInf;
  auto consider = [&](const Thresholds& theta, bool witness) {
    const Vector d = logistic_decisions(problem, theta);
    const double gap = parity_gap(d, problem.s);
    if (!(gap <= effective_epsilon)) return;
    const double loss = quadratic_loss(d, problem.y);
    if (better(loss, theta, best.loss, best.theta)) {
      best = FairSolution{theta, loss, gap, witness};
    }
  };

  consider({-kInf, -kInf}, true);
  consider({kInf, kInf}, true);

  double lo0 = problem.x.minCoeff() - 10.0 * problem.tau;
  double hi0 = problem.x.maxCoeff() + 10.0 * problem.tau;
  double lo1 = lo0, hi1 = hi0;
  for (int stage = 0; stage < kStages; ++stage) {
    const double step0 = (hi0 - lo0) / (kGridPoints - 1);
    const double step1 = (hi1 - lo1) / (kGridPoints - 1);
    for (int a = 0; a < kGridPoints; ++a) {
      for (int b = 0; b < kGridPoints; ++b) {
        consider({lo0 + a * step0, lo1 + b * step1}, false);
      }
    }
    if (best.witness) break;  // nothing finite beat the witnesses; no cell to refine
    lo0 = best.theta[0] - step0;
    hi0 = best.theta[0] + step0;
    lo1 = best.theta[1] - step1;
    hi1 = best.theta[1] + step1;
  }
  return best;
}

TransferCheck feasibility_transfer_check(const FairnessProblem& at_estimate,
                                         const Thresholds& theta, double r) {
  at_estimate.validate();
  if (!(r >= 0.0)) fail(ErrorCode::InvalidArgument, "band radius must be nonnegative");
  const double slack = r / at_estimate.tau;
  if (at_estimate.epsilon < slack) {
    std::ostringstream os;
    os.precision(17);
    os << "epsilon = " << at_estimate.epsilon << " is below r / tau = " << slack;
    fail(ErrorCode::InsufficientTolerance, os.str());
  }
  TransferCheck out;
  out.required = at_estimate.epsilon - slack;
  out.observed_gap = parity_gap(logistic_decisions(at_estimate, theta), at_estimate.s);
  out.passes = out.observed_gap <= out.required;
  return out;
}

TradeoffBounds tradeoff_bounds(const Vector& d_fair, const Vector& d_un, const Vector& y,
                               double tau, double delta_theta) {
  if (d_fair.size() != d_un.size() || d_fair.size() != y.size() || y.size() == 0) {
    fail(ErrorCode::ShapeMismatch, "decision vectors and targets must share a positive length");
  }
  if (!(tau > 0.0) || !(delta_theta >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "requires tau > 0 and delta_theta >= 0");
  }
  const double n = static_cast<double>(y.size());
  const double diff = (d_fair - d_un).norm();
  TradeoffBounds out;
  out.loss_gap = quadratic_loss(d_fair, y) - quadratic_loss(d_un, y);
  out.bound_l2 = 2.0 / std::sqrt(n) * diff;
  out.bound_l2_n = 2.0 / n * diff;
  out.bound_shift = delta_theta / (2.0 * tau);
  constexpr double tol = 1e-12;
  out.l2_holds = std::abs(out.loss_gap) <= out.bound_l2 + tol;
  out.shift_holds = std::abs(out.loss_gap) <= out.bound_shift + tol;
  out.l2_n_holds = std::abs(out.loss_gap) <= out.bound_l2_n + tol;
  return out;
}

}  // namespace specgraph
