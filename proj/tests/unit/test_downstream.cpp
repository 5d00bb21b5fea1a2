#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>

#include "specgraph/error.hpp"
#include "specgraph/fairness.hpp"
#include "specgraph/filtration.hpp"
#include "specgraph/ridge.hpp"
#include "specgraph/simulation.hpp"
#include "test_support.hpp"

using namespace specgraph;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::NumericalFailure;
}

OrthonormalBasis e1_basis(int n) {
  Matrix U = Matrix::Zero(n, 1);
  U(0, 0) = 1;
  return OrthonormalBasis(U);
}

FairnessProblem random_problem(Rng& rng, int n, double tau, double eps) {
  FairnessProblem p;
  p.x.resize(n);
  p.y.resize(n);
  p.s.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    p.s[static_cast<std::size_t>(i)] = i % 2;
    p.x[i] = testsupport::uniform(rng, -2, 2) + 0.8 * (i % 2);
    p.y[i] = uniform01(rng) < 0.5 + 0.2 * p.x[i] ? 1.0 : 0.0;
  }
  p.tau = tau;
  p.epsilon = eps;
  return p;
}

}  // namespace

// ---- ridge ----

TEST(Ridge, ClosedForms) {
  const Vector y = Vector::Ones(2);
  EXPECT_DOUBLE_EQ(ridge_risk(e1_basis(2), y, 3.0), 0.78125);
  EXPECT_EQ(code_of([&] { ridge_risk(e1_basis(2), y, 0.0); }), ErrorCode::InvalidArgument);
  EXPECT_DOUBLE_EQ(ridge_risk(e1_basis(2), y, 1.0), 0.625);
  EXPECT_DOUBLE_EQ(ridge_risk_bound(y, 1.0, 0.25, 2), 0.25);
  EXPECT_DOUBLE_EQ(lipschitz_propagate(0.5, 3.0), 1.5);
  EXPECT_EQ(code_of([&] { ridge_risk(e1_basis(3), y, 1.0); }), ErrorCode::ShapeMismatch);
}

TEST(Ridge, RiskGapBoundedByRadius) {
  Rng rng(51);
  for (int t = 0; t < 300; ++t) {
    const int n = testsupport::uniform_int(rng, 2, 30);
    const int k = testsupport::uniform_int(rng, 1, n - 1);
    const OrthonormalBasis U = testsupport::random_basis(rng, n, k);
    const OrthonormalBasis V = testsupport::random_basis(rng, n, k);
    const Vector y = testsupport::gaussian(rng, n, 1);
    const double lambda = testsupport::uniform(rng, 0.01, 5);
    const double r = grassmann_distance(U, V);
    EXPECT_LE(std::abs(ridge_risk(U, y, lambda) - ridge_risk(V, y, lambda)),
              ridge_risk_bound(y, lambda, r, n) + 1e-12);
  }
}

// ---- fairness ----

TEST(Fairness, DecisionsAndParity) {
  Vector x(4);
  x << 0, 0, 1, -1;
  const std::vector<int> s{0, 0, 1, 1};
  const Vector d = logistic_decisions(x, s, 1.0, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(d[0], 0.5);
  EXPECT_NEAR(d[2] + d[3], 1.0, 1e-15);
  EXPECT_NEAR(parity_gap(d, s), 0.0, 1e-15);
  const Vector sat = logistic_decisions(x, s, 1.0, {-kInf, kInf});
  EXPECT_EQ(sat, (Vector(4) << 1, 1, 0, 0).finished());
  EXPECT_DOUBLE_EQ(parity_gap(sat, s), 1.0);
  EXPECT_EQ(code_of([&] { parity_gap(d, {0, 0, 0, 0}); }), ErrorCode::EmptyGroup);
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  EXPECT_DOUBLE_EQ(sigmoid(-800.0), 0.0);
}

TEST(Fairness, TransferExample) {
  // tau = 1, r = 0.1, eps = 0.2: parity at the estimate must be at most 0.1.
  FairnessProblem p;
  p.x = (Vector(4) << 0, 0, 0, 0).finished();
  p.y = Vector::Zero(4);
  p.s = {0, 0, 1, 1};
  p.tau = 1.0;
  p.epsilon = 0.2;
  const TransferCheck ok = feasibility_transfer_check(p, {0.0, 0.0}, 0.1);
  EXPECT_TRUE(ok.passes);
  EXPECT_NEAR(ok.required, 0.1, 1e-15);
  EXPECT_EQ(ok.observed_gap, 0.0);
  const TransferCheck bad = feasibility_transfer_check(p, {0.0, 1.0}, 0.1);
  EXPECT_FALSE(bad.passes);  // sigmoid(0) - sigmoid(-1) ~ 0.231
  EXPECT_EQ(code_of([&] { feasibility_transfer_check(p, {0.0, 0.0}, 0.3); }),
            ErrorCode::InsufficientTolerance);
}

TEST(Fairness, TransferGuaranteeUnderPerturbation) {
  Rng rng(52);
  int exercised = 0;
  for (int t = 0; t < 400; ++t) {
    const double tau = testsupport::uniform(rng, 0.2, 2.0);
    FairnessProblem p = random_problem(rng, 20, tau, testsupport::uniform(rng, 0.05, 0.5));
    const double r = testsupport::uniform(rng, 0.0, p.epsilon * tau);
    const Thresholds theta{testsupport::uniform(rng, -1, 1), testsupport::uniform(rng, -1, 1)};
    const TransferCheck c = feasibility_transfer_check(p, theta, r);
    if (!c.passes) continue;
    ++exercised;
    Vector xp = p.x;
    for (Eigen::Index i = 0; i < xp.size(); ++i) xp[i] += testsupport::uniform(rng, -r, r);
    EXPECT_LE(parity_gap(logistic_decisions(xp, p.s, tau, theta), p.s), p.epsilon + 1e-12);
  }
  EXPECT_GT(exercised, 20);
}

TEST(Fairness, OptimizerRespectsConstraint) {
  Rng rng(53);
  for (int t = 0; t < 5; ++t) {
    const FairnessProblem p = random_problem(rng, 30, 0.5, 0.05);
    const FairSolution fair = fair_optimize(p, p.epsilon);
    const FairSolution free = fair_optimize(p, 1.0);
    EXPECT_LE(fair.parity, p.epsilon);
    EXPECT_LE(free.loss, fair.loss + 1e-15);
    EXPECT_NEAR(quadratic_loss(logistic_decisions(p, fair.theta), p.y), fair.loss, 1e-15);
  }
}

TEST(Fairness, AllZeroTargetsPickSaturatedWitness) {
  Rng rng(54);
  FairnessProblem p = random_problem(rng, 10, 1.0, 0.0);
  p.y.setZero();
  const FairSolution sol = fair_optimize(p, 0.0);
  EXPECT_TRUE(sol.witness);
  EXPECT_EQ(sol.loss, 0.0);
  EXPECT_EQ(sol.theta[0], kInf);
  EXPECT_EQ(sol.theta[1], kInf);
}

TEST(Fairness, Deterministic) {
  Rng rng(55);
  const FairnessProblem p = random_problem(rng, 25, 0.7, 0.1);
  const FairSolution a = fair_optimize(p, 0.1), b = fair_optimize(p, 0.1);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.loss, b.loss);
}

TEST(Fairness, ValidationErrors) {
  FairnessProblem p;
  p.x = Vector::Zero(2);
  p.y = Vector::Zero(2);
  p.s = {0, 1};
  p.tau = 0.0;
  EXPECT_EQ(code_of([&] { p.validate(); }), ErrorCode::InvalidArgument);
  p.tau = 1.0;
  p.s = {1, 1};
  EXPECT_EQ(code_of([&] { p.validate(); }), ErrorCode::EmptyGroup);
  p.s = {0, 1, 1};
  EXPECT_EQ(code_of([&] { p.validate(); }), ErrorCode::ShapeMismatch);
}

TEST(Tradeoff, Examples) {
  const Vector y = Vector::Zero(4);
  const Vector a = Vector::Constant(4, 0.5), b = Vector::Zero(4);
  const TradeoffBounds t = tradeoff_bounds(a, b, y, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(t.loss_gap, 0.25);
  EXPECT_DOUBLE_EQ(t.bound_l2, 1.0);
  EXPECT_DOUBLE_EQ(t.bound_l2_n, 0.5);
  EXPECT_DOUBLE_EQ(t.bound_shift, 1.0);
  EXPECT_TRUE(t.l2_holds && t.shift_holds && t.l2_n_holds);
}

TEST(Tradeoff, BoundsHoldForThresholdShifts) {
  Rng rng(56);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = testsupport::uniform_int(rng, 2, 40);
    const double tau = testsupport::uniform(rng, 0.1, 3);
    FairnessProblem p = random_problem(rng, n, tau, 0.1);
    const Thresholds th1{testsupport::uniform(rng, -3, 3), testsupport::uniform(rng, -3, 3)};
    const Thresholds th2{testsupport::uniform(rng, -3, 3), testsupport::uniform(rng, -3, 3)};
    const double shift = std::max(std::abs(th1[0] - th2[0]), std::abs(th1[1] - th2[1]));
    const TradeoffBounds t =
        tradeoff_bounds(logistic_decisions(p, th1), logistic_decisions(p, th2), p.y, tau, shift);
    EXPECT_TRUE(t.l2_holds);
    EXPECT_TRUE(t.shift_holds);
  }
}

// ---- filtration ----

TEST(Filtration, LineExample) {
  Matrix X(3, 1);
  X << 0, 1, 3;
  const Matrix D = distance_matrix(X);
  EXPECT_EQ(D(0, 2), 3.0);
  EXPECT_EQ(threshold_edge_count(D, 1.0), 1);
  EXPECT_EQ(threshold_component_count(D, 1.0), 2);
  EXPECT_EQ(threshold_edge_count(D, 2.0), 2);
  EXPECT_EQ(threshold_component_count(D, 2.0), 1);
  EXPECT_EQ(threshold_edge_count(D, -0.5), 0);
  EXPECT_EQ(threshold_component_count(D, -0.5), 3);
  EXPECT_TRUE(threshold_subgraph(D, 1.0, D, 2.0));
  EXPECT_FALSE(threshold_subgraph(D, 2.0, D, 1.0));
}

TEST(Filtration, DuplicatePointsAtZero) {
  Matrix X = Matrix::Zero(3, 2);
  EXPECT_EQ(threshold_edge_count(distance_matrix(X), 0.0), 3);
  EXPECT_EQ(threshold_component_count(distance_matrix(X), 0.0), 1);
}

TEST(Filtration, EnvelopeSandwichProperty) {
  Rng rng(57);
  for (int t = 0; t < 100; ++t) {
    const int n = testsupport::uniform_int(rng, 2, 25);
    const int k = testsupport::uniform_int(rng, 1, 3);
    const Matrix X = testsupport::gaussian(rng, n, k);
    Matrix Y = X;
    const double eta = testsupport::uniform(rng, 0, 0.5);
    for (int i = 0; i < n; ++i) {
      Vector dir = testsupport::gaussian(rng, k, 1);
      Y.row(i) += (dir * (testsupport::uniform(rng, 0, eta) / dir.norm())).transpose();
    }
    std::vector<double> grid;
    for (int g = 0; g <= 10; ++g) grid.push_back(-0.5 + 0.4 * g);
    const FiltrationReport rep = filtration_envelope(X, Y, grid);
    EXPECT_LE(rep.eta, eta + 1e-12);
    EXPECT_TRUE(rep.d_filt_within);
    EXPECT_TRUE(rep.all_inclusions_hold());
    const auto brackets = filtration_brackets(X, rep.eta, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const auto& lv = rep.levels[g];
      EXPECT_LE(brackets[g].edges_min, lv.edges_y);
      EXPECT_GE(brackets[g].edges_max, lv.edges_y);
      EXPECT_LE(brackets[g].components_min, lv.components_y);
      EXPECT_GE(brackets[g].components_max, lv.components_y);
    }
  }
}

TEST(Filtration, ShapeMismatch) {
  EXPECT_EQ(code_of([] { filtration_envelope(Matrix::Zero(3, 2), Matrix::Zero(2, 2), {0.0}); }),
            ErrorCode::ShapeMismatch);
}

// ---- randomized audits ----

TEST(DownstreamAudits, NoViolations) {
  for (const AuditCounter& a :
       {ridge_audit(300, 1), fairness_transfer_audit(40, 2, 200), tradeoff_audit(300, 3),
        filtration_audit(100, 4), uniform_rounding_audit(300, 5)}) {
    EXPECT_GT(a.checks, 0u) << a.name;
    EXPECT_EQ(a.violations, 0u) << a.name << " max excess " << a.max_excess;
  }
}
