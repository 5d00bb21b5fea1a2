#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <string>

#include "specgraph/error.hpp"
#include "specgraph/io.hpp"
#include "specgraph/protocol.hpp"
#include "specgraph/report_json.hpp"
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

AdjacencyMatrix complete_graph(int n) {
  Matrix A = Matrix::Ones(n, n);
  A.diagonal().setZero();
  return AdjacencyMatrix::from_dense(A);
}

const AdjacencyMatrix& worked_graph() {
  static const AdjacencyMatrix A = load_edge_list(std::string(SPECGRAPH_TEST_DATA) + "/two_block_seed3.tsv");
  return A;
}

ProtocolConfig worked_config() {
  return parse_protocol_config(read_text_file(std::string(SPECGRAPH_TEST_DATA) + "/two_block_config.json"));
}

const Refusal* find_refusal(const DiagnosticReport& r, const std::string& output) {
  for (const auto& x : r.refusals)
    if (x.output == output) return &x;
  return nullptr;
}

}  // namespace

TEST(ObservedGapProxy, CompleteGraph) {
  EXPECT_NEAR(observed_gap_proxy(complete_graph(4), 1), 4.0, 1e-12);
}

TEST(ParametricGap, EqualTwoBlock) {
  EXPECT_NEAR(parametric_gap_certificate(SbmSpec::equal_blocks(200, 2, 0.3, 0.1), 2), 20.0, 1e-12);
  EXPECT_EQ(parametric_gap_certificate(SbmSpec::equal_blocks(200, 2, 0.3, 0.3), 2), 0.0);
}

TEST(ParametricGap, DenseThreeBlock) {
  Matrix B(3, 3);
  B << 0.6, 0.1, 0.05, 0.1, 0.5, 0.1, 0.05, 0.1, 0.4;
  const SbmSpec spec = SbmSpec::from_block_sizes({20, 30, 25}, B);
  const Vector ev = symmetric_eigenvalues(build_probability_matrix(spec).P);
  EXPECT_NEAR(parametric_gap_certificate(spec, 3), eigengap(ev, 3), 1e-9);
  EXPECT_GT(parametric_gap_certificate(spec, 3), 1.0);
}

TEST(ParametricGap, DcsbmAndRdpg) {
  DcsbmSpec d;
  d.labels = {0, 0, 0, 1, 1, 1};
  d.theta = Vector::Constant(6, 0.9);
  d.connectivity = (Matrix(2, 2) << 0.9, 0.1, 0.1, 0.9).finished();
  const Vector ev = symmetric_eigenvalues(build_probability_matrix(d).P);
  EXPECT_NEAR(parametric_gap_certificate(d, 2), eigengap(ev, 2), 1e-12);
  RdpgSpec r{Matrix::Constant(4, 1, 0.5), 1, 0};
  EXPECT_EQ(code_of([&] { parametric_gap_certificate(r, 1); }), ErrorCode::UnsupportedSpec);
}

TEST(Usvt, CompleteAndEmpty) {
  const Matrix P = usvt_denoise(complete_graph(10));
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) EXPECT_NEAR(P(i, j), i == j ? 0.0 : 0.9, 1e-12);
  EXPECT_EQ(usvt_denoise(AdjacencyMatrix::from_dense(Matrix::Zero(5, 5))), Matrix::Zero(5, 5));
  EXPECT_EQ(code_of([] { usvt_denoise(complete_graph(3), 0.0); }), ErrorCode::InvalidArgument);
}

TEST(Usvt, OutputIsProbabilityMatrix) {
  Rng rng(61);
  for (int t = 0; t < 10; ++t) {
    const auto m = build_probability_matrix(SbmSpec::equal_blocks(60, 2, 0.5, 0.1));
    const Matrix P = usvt_denoise(sample_adjacency(m, t));
    EXPECT_NO_THROW(validate_probability_matrix(P));
  }
}

TEST(RunProtocol, WorkedExampleAllFlagsPass) {
  const DiagnosticReport r = run_protocol(worked_graph(), worked_config());
  EXPECT_TRUE(r.d1.pass && r.d2.pass && r.d3.pass && r.d4.pass);
  EXPECT_TRUE(r.refusals.empty());
  ASSERT_TRUE(r.subspace && r.bands && r.stability && r.cluster);
  EXPECT_NEAR(r.quantile->q, 29.876168271048034962, 1e-12);
  EXPECT_NEAR(*r.gap_certificate, 20.0, 1e-12);
  EXPECT_NEAR(r.subspace->radius, 2.9876168271048035, 1e-13);
  EXPECT_NEAR(r.bands->half_width, 0.75254831916997569, 1e-14);
  EXPECT_TRUE(r.cluster->vacuous);
  EXPECT_EQ(r.stability->m, 10);
  EXPECT_NE(r.d2.provenance.find("parametric"), std::string::npos);
}

TEST(RunProtocol, NoEnvelopeRefusesEverything) {
  ProtocolConfig c;
  c.k = 2;
  const DiagnosticReport r = run_protocol(worked_graph(), c);
  EXPECT_FALSE(r.d1.pass || r.d2.pass || r.d3.pass || r.d4.pass);
  EXPECT_FALSE(r.subspace || r.bands || r.cluster || r.stability);
  ASSERT_NE(find_refusal(r, "subspace_region"), nullptr);
  EXPECT_EQ(find_refusal(r, "subspace_region")->reason, "D1:no_degree_envelope,D2:no_gap_certificate");
  EXPECT_GT(r.observed_gap_proxy, 0.0);  // reported, never promoted to a certificate
  EXPECT_FALSE(r.gap_certificate.has_value());
}

TEST(RunProtocol, GatingOverAllFlagCombinations) {
  for (int mask = 0; mask < 16; ++mask) {
    const bool f1 = mask & 1, f2 = mask & 2, f3 = mask & 4, f4 = mask & 8;
    ProtocolConfig c;
    c.k = 2;
    if (f1) c.envelope.d_max = 39.7;
    if (f2) c.envelope.gap_lower = 20.0;
    if (f3) c.centrality = CentralityConfig{CentralityKind::Katz, 5.0 / 794.0, 39.7, std::nullopt};
    if (f4) {
      ClusteringConfig cl;
      cl.margin = 2.0 / std::sqrt(200.0);
      c.clustering = cl;
    }
    c.selection_m = 10;
    const DiagnosticReport r = run_protocol(worked_graph(), c);
    EXPECT_EQ(r.d1.pass, f1);
    EXPECT_EQ(r.d2.pass, f2);
    EXPECT_EQ(r.d3.pass, f3);
    EXPECT_EQ(r.d4.pass, f4);
    EXPECT_EQ(r.subspace.has_value(), f1 && f2) << mask;
    EXPECT_EQ(r.bands.has_value(), f1 && f3) << mask;
    EXPECT_EQ(r.stability.has_value(), f1 && f3) << mask;
    EXPECT_EQ(r.cluster.has_value(), f1 && f2 && f4) << mask;
    EXPECT_EQ(find_refusal(r, "subspace_region") != nullptr, !(f1 && f2));
    EXPECT_EQ(find_refusal(r, "cluster_region") != nullptr, !(f1 && f2 && f4));
  }
}

TEST(RunProtocol, KatzDomainRefusal) {
  ProtocolConfig c = worked_config();
  c.centrality->beta = 0.05;  // 1/(2 beta) = 10 < rho(P) ~ 39.7
  const DiagnosticReport r = run_protocol(worked_graph(), c);
  EXPECT_FALSE(r.d3.pass);
  EXPECT_EQ(r.d3.provenance.rfind("population_outside_katz_domain", 0), 0u);
  EXPECT_EQ(find_refusal(r, "centrality_bands")->reason, "D3:population_outside_katz_domain");
}

TEST(RunProtocol, CollisionRefusesSubspace) {
  ProtocolConfig c;
  c.k = 2;
  c.parametric_spec = SbmSpec::equal_blocks(200, 2, 0.3, 0.3);
  const DiagnosticReport r = run_protocol(worked_graph(), c);
  EXPECT_TRUE(r.d1.pass);
  EXPECT_FALSE(r.d2.pass);
  EXPECT_EQ(find_refusal(r, "subspace_region")->reason, "D2:no_gap_certificate");
}

TEST(RunProtocol, RdpgFallsBackToDeclaredGap) {
  ProtocolConfig c;
  c.k = 1;
  c.parametric_spec = RdpgSpec{Matrix::Constant(200, 1, 0.4), 1, 0};
  c.envelope.gap_lower = 25.0;
  const DiagnosticReport r = run_protocol(worked_graph(), c);
  EXPECT_TRUE(r.d2.pass);
  EXPECT_NE(r.d2.provenance.find("unsupported"), std::string::npos);
  EXPECT_DOUBLE_EQ(*r.gap_certificate, 25.0);
}

TEST(RunProtocol, UsvtWeylRoute) {
  ProtocolConfig c;
  c.k = 2;
  c.envelope.d_max = 39.7;
  c.usvt = UsvtConfig{2.02, 1.0};
  const DiagnosticReport r = run_protocol(worked_graph(), c);
  ASSERT_TRUE(r.uncertified_deviation_bound.has_value());
  ASSERT_TRUE(r.d2.pass);
  EXPECT_NE(r.d2.provenance.find("usvt-weyl"), std::string::npos);
  c.usvt->eps_P.reset();  // no eps_P, no certificate
  EXPECT_FALSE(run_protocol(worked_graph(), c).d2.pass);
}

TEST(RunProtocol, FairnessAndFiltration) {
  ProtocolConfig c = worked_config();
  FairnessConfig f;
  f.y = Vector::Zero(200);
  for (int i = 0; i < 100; ++i) f.y[i] = 1.0;
  f.s.assign(200, 0);
  for (int i = 0; i < 200; i += 2) f.s[static_cast<std::size_t>(i)] = 1;
  f.tau = 1.0;
  f.epsilon = 0.9;
  c.fairness = f;
  c.clustering->c_row = 0.01;
  c.t_grid = std::vector<double>{0.0, 0.05, 0.1};
  const DiagnosticReport r = run_protocol(worked_graph(), c);
  ASSERT_TRUE(r.fairness.has_value());
  EXPECT_NEAR(r.fairness->effective_epsilon, 0.9 - r.bands->half_width, 1e-15);
  EXPECT_LE(r.fairness->solution.parity, r.fairness->effective_epsilon);
  EXPECT_TRUE(r.fairness->transfer.passes);
  ASSERT_TRUE(r.filtration.has_value());
  EXPECT_NEAR(r.filtration->eta, 0.01 * r.subspace->radius, 1e-15);
  EXPECT_EQ(r.filtration->brackets.size(), 3u);

  c.fairness->epsilon = 0.5;  // below r / tau ~ 0.75
  const DiagnosticReport tight = run_protocol(worked_graph(), c);
  EXPECT_FALSE(tight.fairness.has_value());
  EXPECT_EQ(find_refusal(tight, "fairness")->reason, "insufficient_tolerance");
}

TEST(RunProtocol, ByteIdenticalReports) {
  const ProtocolConfig c = worked_config();
  const std::string a = report_document("certify", to_json(run_protocol(worked_graph(), c)));
  const std::string b = report_document("certify", to_json(run_protocol(worked_graph(), c)));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("{\n  \"schema_version\": 1,\n  \"kind\": \"certify\"", 0), 0u);
  EXPECT_NE(a.find("diagnostic only; not a certificate"), std::string::npos);
}

TEST(RunProtocol, InputErrors) {
  ProtocolConfig c = worked_config();
  c.k = 200;
  EXPECT_EQ(code_of([&] { run_protocol(worked_graph(), c); }), ErrorCode::KOutOfRange);
  c = worked_config();
  c.alpha = 1.0;
  EXPECT_EQ(code_of([&] { run_protocol(worked_graph(), c); }), ErrorCode::BadLevel);
  c = worked_config();
  c.parametric_spec = SbmSpec::equal_blocks(100, 2, 0.3, 0.1);
  EXPECT_EQ(code_of([&] { run_protocol(worked_graph(), c); }), ErrorCode::ShapeMismatch);
}

TEST(ProtocolConfig, ParseErrors) {
  EXPECT_EQ(code_of([] { parse_protocol_config("{}"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_protocol_config("[1]"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_protocol_config("{\"k\": "); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_protocol_config(R"({"k": 2, "centrality": {"type": "pagerank"}})"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_protocol_config(R"({"k": "two"})"); }), ErrorCode::ParseError);
}

TEST(ProtocolConfig, ParsesFullDocument) {
  const ProtocolConfig c = parse_protocol_config(R"({
    "k": 3, "alpha": 0.1,
    "envelope": {"d_max": 12.5, "gap_lower": 4},
    "usvt": {"threshold_scale": 3, "eps_P": 0.5},
    "centrality": {"type": "eigenvector", "gamma": 2},
    "clustering": {"margin": 0.2, "c_row": 1.5, "num_clusters": 3},
    "selection": {"m": 4},
    "filtration": {"t_grid": [0.1, 0.2]}
  })");
  EXPECT_EQ(c.k, 3);
  EXPECT_EQ(c.alpha, 0.1);
  EXPECT_EQ(*c.envelope.d_max, 12.5);
  EXPECT_EQ(*c.envelope.gap_lower, 4.0);
  EXPECT_EQ(c.usvt->threshold_scale, 3.0);
  EXPECT_EQ(*c.usvt->eps_P, 0.5);
  EXPECT_EQ(c.centrality->kind, CentralityKind::Eigenvector);
  EXPECT_EQ(*c.centrality->gamma, 2.0);
  EXPECT_EQ(c.clustering->num_clusters, 3);
  EXPECT_EQ(*c.selection_m, 4);
  EXPECT_EQ(c.t_grid->size(), 2u);
}
