#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <set>

#include "specgraph/concentration.hpp"
#include "specgraph/error.hpp"
#include "specgraph/report_json.hpp"
#include "specgraph/selection.hpp"
#include "specgraph/simulation.hpp"
#include "test_support.hpp"

using namespace specgraph;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::NumericalFailure;
}

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

}  // namespace

TEST(Rng, ReplicationSeedsAreStable) {
  EXPECT_EQ(replication_seed(1, 0), replication_seed(1, 0));
  EXPECT_NE(replication_seed(1, 0), replication_seed(1, 1));
  EXPECT_NE(replication_seed(1, 0), replication_seed(2, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(replication_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(Rng, UniformAndNormalMoments) {
  Rng rng(9);
  double s = 0, s2 = 0, lo = 1, hi = 0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    const double u = uniform01(rng);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    const double z = standard_normal(rng);
    s += z;
    s2 += z * z;
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(s / N, 0.0, 0.01);
  EXPECT_NEAR(s2 / N, 1.0, 0.02);
}

TEST(Claims, Parse) {
  EXPECT_EQ(parse_claims("all"), kClaimAll);
  EXPECT_EQ(parse_claims("deviation,cluster"), kClaimDeviation | kClaimCluster);
  EXPECT_EQ(code_of([] { parse_claims("everything"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { parse_claims(""); }), ErrorCode::InvalidArgument);
}

TEST(Coverage, IdenticalAcrossThreadCounts) {
  const auto model = build_probability_matrix(SbmSpec::equal_blocks(40, 2, 0.6, 0.1));
  CoverageConfig cfg;
  cfg.alpha = 0.1;
  cfg.selection_m = 3;
  cfg.threads = 1;
  const std::string one = to_json(coverage_experiment(model, cfg, 12, 99)).dump();
  cfg.threads = 3;
  const std::string three = to_json(coverage_experiment(model, cfg, 12, 99)).dump();
  EXPECT_EQ(one, three);
  const std::string other = to_json(coverage_experiment(model, cfg, 12, 100)).dump();
  EXPECT_NE(one, other);
}

TEST(Coverage, DegenerateModelsAreAlwaysCovered) {
  for (double p : {0.0, 1.0}) {
    const auto model = build_probability_matrix(SbmSpec::equal_blocks(20, 2, p, p));
    CoverageConfig cfg;
    cfg.claims = kClaimDeviation | kClaimSubspace;
    const CoverageResult r = coverage_experiment(model, cfg, 10, 1);
    EXPECT_EQ(r.claim("deviation")->empirical_coverage, 1.0);
    EXPECT_EQ(r.claim("subspace")->empirical_coverage, 1.0);
    EXPECT_FALSE(r.subspace_certified);  // collision: the trivial radius is reported
    EXPECT_EQ(r.subspace_radius, 1.0);
  }
}

TEST(Coverage, DeclaredModeUsesEnvelope) {
  const auto model = build_probability_matrix(SbmSpec::equal_blocks(40, 2, 0.6, 0.1));
  CoverageConfig cfg;
  cfg.mode = CertificateMode::DeclaredEnvelope;
  cfg.claims = kClaimDeviation | kClaimSubspace;
  EXPECT_EQ(code_of([&] { coverage_experiment(model, cfg, 2, 1); }), ErrorCode::InvalidArgument);
  cfg.declared.d_max = 14.0;
  cfg.declared.gap_lower = 9.0;
  const CoverageResult r = coverage_experiment(model, cfg, 5, 1);
  EXPECT_EQ(r.variance_bound, 14.0);
  EXPECT_EQ(r.gap_lower, 9.0);
  EXPECT_NEAR(r.quantile, deviation_quantile(14.0, 40, 0.1).q, 1e-14);
}

TEST(Coverage, AuditsAreClean) {
  const auto model = build_probability_matrix(SbmSpec::equal_blocks(60, 2, 0.7, 0.05));
  CoverageConfig cfg;
  cfg.selection_m = 5;
  const CoverageResult r = coverage_experiment(model, cfg, 20, 5);
  EXPECT_EQ(r.total_violations(), 0u);
  for (const char* name : {"davis_kahan", "procrustes_frobenius", "ridge_risk"}) {
    ASSERT_NE(r.audit(name), nullptr) << name;
    EXPECT_EQ(r.audit(name)->checks, 20u) << name;
  }
  EXPECT_EQ(r.claim("deviation")->replications, 20u);
}

TEST(TieCounterexample, Examples) {
  for (double eps : {1e-1, 1e-3, 1e-6}) {
    const Vector x = vec({1, 1, 0});
    const Vector y = tie_counterexample(x, 1, eps);
    EXPECT_NEAR((y - x).cwiseAbs().maxCoeff(), eps, 1e-15);
    const TopSelection sel = top_m_selection(y, 1);
    ASSERT_TRUE(sel.unique());
    EXPECT_EQ(sel.sets[0], (NodeSet{1}));  // {0} was admissible for x
  }
  EXPECT_EQ(code_of([] { tie_counterexample(vec({2, 1, 0}), 1, 0.1); }), ErrorCode::NoTiePresent);
}

TEST(TieCounterexample, DropsAnAdmissibleMember) {
  Rng rng(71);
  for (int t = 0; t < 200; ++t) {
    const int n = testsupport::uniform_int(rng, 3, 12);
    const int m = testsupport::uniform_int(rng, 1, n - 1);
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = testsupport::uniform_int(rng, 0, 2);
    const TopSelection before = top_m_selection(x, m);
    if (before.unique()) continue;
    const double eps = std::pow(10.0, -testsupport::uniform(rng, 1, 6));
    const Vector y = tie_counterexample(x, m, eps);
    EXPECT_LE((y - x).cwiseAbs().maxCoeff(), eps + 1e-14);
    const TopSelection after = top_m_selection(y, m);
    ASSERT_TRUE(after.unique());
    // some admissible set of x is not the new unique set
    bool differs = false;
    for (const auto& s : before.sets) differs |= s != after.sets[0];
    EXPECT_TRUE(differs);
  }
}

TEST(Collision, SmallestInstance) {
  const CollisionInstance c = collision_instance(6, 1);
  const Vector ev = symmetric_eigenvalues(c.model.P);
  EXPECT_NEAR(ev[0], 1.0, 1e-12);
  EXPECT_NEAR(ev[1], 1.0, 1e-12);
  EXPECT_NEAR(eigengap(ev, 1), 0.0, 1e-12);
  EXPECT_NEAR(grassmann_distance(c.U_a, c.U_b), 1.0, 1e-12);
  EXPECT_EQ(code_of([] { collision_instance(3, 1); }), ErrorCode::TooSmall);
}

TEST(Collision, BothBasesAreTopEigenbases) {
  Rng rng(72);
  for (int t = 0; t < 20; ++t) {
    const int k = testsupport::uniform_int(rng, 1, 4);
    const int n = testsupport::uniform_int(rng, 2 * k + 2, 40);
    const CollisionInstance c = collision_instance(n, k);
    const Vector ev = symmetric_eigenvalues(c.model.P);
    const double lk = ev[k - 1];
    EXPECT_NEAR(eigengap(ev, k), 0.0, 1e-10);
    EXPECT_LT((c.model.P * c.U_a.matrix() - lk * c.U_a.matrix()).norm(), 1e-10);
    EXPECT_LT((c.model.P * c.U_b.matrix() - lk * c.U_b.matrix()).norm(), 1e-10);
    EXPECT_NEAR(grassmann_distance(c.U_a, c.U_b), 1.0, 1e-12);
  }
}

TEST(Collision, SeparationRestoresGap) {
  const int n = 60, k = 2, b = 20;
  for (double delta : {0.01, 0.05, 0.1}) {
    const ProbabilityModel m = separated_collision_instance(n, k, delta);
    const double gap = eigengap(symmetric_eigenvalues(m.P), k);
    EXPECT_NEAR(gap, (b - 1) * delta, 1e-10);
    // Davis-Kahan radius scales like 1 / delta
    EXPECT_NEAR(davis_kahan_radius(1.0, gap).r * delta, 2.0 / (b - 1), 1e-10);
  }
  EXPECT_EQ(code_of([] { separated_collision_instance(60, 2, 0.2); }), ErrorCode::InvalidArgument);
}

TEST(ModulusAudit, KatzAndEigenvector) {
  Rng rng(73);
  std::vector<Matrix> samples;
  for (int i = 0; i < 5; ++i) samples.push_back(testsupport::random_probability(rng, 15));
  double rho = 0;
  for (const auto& M : samples) rho = std::max(rho, spectral_radius(M));
  const double beta = 1.0 / (4.0 * rho);
  const ModulusAudit katz = modulus_audit({CentralityKind::Katz, beta}, samples, 0.05, 200, 1);
  EXPECT_DOUBLE_EQ(katz.stated_modulus, 4 * beta);
  EXPECT_LE(katz.max_ratio_inf, katz.stated_modulus);
  EXPECT_GT(katz.max_ratio_inf, 0.0);
  const ModulusAudit eig = modulus_audit({CentralityKind::Eigenvector, 0.0}, samples, 1e-4, 200, 2);
  EXPECT_LE(eig.max_ratio_2, eig.stated_modulus);
  EXPECT_EQ(code_of([&] { modulus_audit({CentralityKind::Katz, 10.0}, samples, 0.05, 1, 1); }),
            ErrorCode::OutsideDomain);
}

TEST(StabilityAudit, CertifiedInstanceNeverFlips) {
  // Star-like hub structure with a wide top-1 margin.
  const int n = 12;
  Matrix M = Matrix::Zero(n, n);
  for (int i = 1; i < n; ++i) M(0, i) = M(i, 0) = 1;
  const double beta = 1.0 / (4.0 * spectral_radius(M));
  const Vector x = katz_centrality(M, beta);
  const double q = 0.05;
  ASSERT_TRUE(stability_certificate(x, 1, katz_modulus(beta), q).certified);
  const AuditCounter a = stability_perturbation_audit(M, beta, 1, q, 300, 3);
  EXPECT_GT(a.checks, 250u);
  EXPECT_EQ(a.violations, 0u);
}
