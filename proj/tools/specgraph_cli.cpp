// specgraph command-line front end. Exit codes: 0 report produced (refusals
// included), 1 invalid input, 2 internal numerical failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "specgraph/centrality.hpp"
#include "specgraph/error.hpp"
#include "specgraph/filtration.hpp"
#include "specgraph/io.hpp"
#include "specgraph/protocol.hpp"
#include "specgraph/report_json.hpp"
#include "specgraph/simulation.hpp"

using namespace specgraph;

namespace {

struct CommonOptions {
  std::string graph;
  std::string config;
  std::optional<double> alpha;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

void emit(const CommonOptions& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + opt.out);
  f << text;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

DiagnosticReport certify(const CommonOptions& opt) {
  if (opt.graph.empty()) fail(ErrorCode::InvalidArgument, "--graph is required");
  if (opt.config.empty()) fail(ErrorCode::InvalidArgument, "--config is required");
  const AdjacencyMatrix A = load_edge_list(opt.graph);
  ProtocolConfig config = parse_protocol_config(read_text_file(opt.config));
  if (opt.alpha) config.alpha = *opt.alpha;
  return run_protocol(A, config);
}

std::string diagnostics_csv(const DiagnosticReport& r) {
  std::ostringstream os;
  os << "section,key,value\n";
  const FlagStatus* flags[] = {&r.d1, &r.d2, &r.d3, &r.d4};
  for (int i = 0; i < 4; ++i) {
    os << "diagnostic,D" << i + 1 << ',' << (flags[i]->pass ? "pass" : "fail") << '\n';
  }
  os << "diagnostic,observed_gap_proxy," << json::format_real(r.observed_gap_proxy) << '\n';
  if (r.quantile) os << "quantile,q," << json::format_real(r.quantile->q) << '\n';
  if (r.subspace) {
    os << "subspace_region,radius," << json::format_real(r.subspace->radius) << '\n';
    os << "subspace_region,informative," << (r.subspace->informative ? "true" : "false") << '\n';
  }
  if (r.bands) os << "centrality_bands,half_width," << json::format_real(r.bands->half_width) << '\n';
  if (r.stability) {
    os << "stability_certificate,certified," << (r.stability->certified ? "true" : "false") << '\n';
  }
  if (r.cluster) os << "cluster_region,hamming_radius," << r.cluster->hamming_radius << '\n';
  for (const auto& ref : r.refusals) os << "refusal," << ref.output << ',' << csv_field(ref.reason) << '\n';
  return os.str();
}

json::Value refusal_body(const DiagnosticReport& r, const std::string& output) {
  json::Value v = json::Value::object();
  json::Value full = to_json(r);
  v.set("diagnostics", *full.find("diagnostics"));
  for (const auto& ref : r.refusals) {
    if (ref.output == output) {
      v.set("result", "no certificate");
      v.set("reason", ref.reason);
    }
  }
  return v;
}

int run_certify(const CommonOptions& opt) {
  const DiagnosticReport r = certify(opt);
  emit(opt, opt.format == "csv" ? diagnostics_csv(r) : report_document("certify", to_json(r)));
  return 0;
}

int run_bands(const CommonOptions& opt) {
  const DiagnosticReport r = certify(opt);
  if (!r.bands) {
    emit(opt, report_document("bands", refusal_body(r, "centrality_bands")));
    return 0;
  }
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "node,point,lower,upper\n";
    const Vector lo = r.bands->lower(), hi = r.bands->upper();
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
      os << i << ',' << json::format_real(r.bands->point[i]) << ',' << json::format_real(lo[i]) << ','
         << json::format_real(hi[i]) << '\n';
    }
    emit(opt, os.str());
  } else {
    emit(opt, report_document("bands", to_json(*r.bands)));
  }
  return 0;
}

int run_cluster(const CommonOptions& opt) {
  const DiagnosticReport r = certify(opt);
  if (!r.cluster) {
    emit(opt, report_document("cluster", refusal_body(r, "cluster_region")));
    return 0;
  }
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "node,label\n";
    for (std::size_t i = 0; i < r.cluster->labels.size(); ++i) os << i << ',' << r.cluster->labels[i] << '\n';
    emit(opt, os.str());
  } else {
    emit(opt, report_document("cluster", to_json(*r.cluster)));
  }
  return 0;
}

int run_stability(const CommonOptions& opt) {
  const DiagnosticReport r = certify(opt);
  if (!r.stability) {
    emit(opt, report_document("stability", refusal_body(r, "stability_certificate")));
    return 0;
  }
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "m,certified,observed_margin,threshold\n"
       << r.stability->m << ',' << (r.stability->certified ? "true" : "false") << ','
       << (r.stability->observed_margin ? json::format_real(*r.stability->observed_margin) : "") << ','
       << json::format_real(r.stability->threshold) << '\n';
    emit(opt, os.str());
  } else {
    emit(opt, report_document("stability", to_json(*r.stability)));
  }
  return 0;
}

int run_fairness(const CommonOptions& opt) {
  const DiagnosticReport r = certify(opt);
  if (!r.fairness) {
    emit(opt, report_document("fairness", refusal_body(r, "fairness")));
    return 0;
  }
  emit(opt, report_document("fairness", to_json(*r.fairness)));
  return 0;
}

int run_filtration(const CommonOptions& opt, const std::string& x_csv, const std::string& y_csv,
                   const std::vector<double>& t_grid) {
  if (!x_csv.empty() || !y_csv.empty()) {
    if (x_csv.empty() || y_csv.empty()) fail(ErrorCode::InvalidArgument, "--x and --y go together");
    std::ifstream fx(x_csv), fy(y_csv);
    if (!fx || !fy) fail(ErrorCode::ParseError, "cannot open embedding CSV");
    const FiltrationReport rep = filtration_envelope(read_dense_csv(fx), read_dense_csv(fy), t_grid);
    emit(opt, report_document("filtration_envelope", to_json(rep)));
    return 0;
  }
  const DiagnosticReport r = certify(opt);
  if (!r.filtration) {
    emit(opt, report_document("filtration", refusal_body(r, "filtration")));
    return 0;
  }
  emit(opt, report_document("filtration", to_json(*r.filtration)));
  return 0;
}

int run_simulate(const CommonOptions& opt, const std::string& model_path, std::uint64_t reps,
                 const std::string& claims, int k, unsigned threads, const std::string& mode) {
  if (model_path.empty()) fail(ErrorCode::InvalidArgument, "--model is required");
  const ModelDocument doc = load_model_document(model_path);
  const ProbabilityModel model = build_probability_matrix(doc.spec, doc.envelope);
  CoverageConfig config;
  config.k = k;
  config.alpha = opt.alpha.value_or(0.1);
  config.claims = parse_claims(claims);
  config.threads = threads;
  if (mode == "declared") {
    config.mode = CertificateMode::DeclaredEnvelope;
    config.declared = doc.envelope;
  } else if (mode != "oracle") {
    fail(ErrorCode::InvalidArgument, "--mode must be oracle or declared");
  }
  const CoverageResult res = coverage_experiment(model, config, reps, opt.seed);
  emit(opt, opt.format == "csv" ? coverage_csv(res) : report_document("coverage", to_json(res)));
  return 0;
}

int run_example_sbm(const CommonOptions& opt, const std::string& graph_out) {
  constexpr int n = 200;
  constexpr double p = 0.3, q = 0.1;
  const double alpha = opt.alpha.value_or(0.05);
  const SbmSpec spec = SbmSpec::equal_blocks(n, 2, p, q);
  const ProbabilityModel model = build_probability_matrix(spec);
  const AdjacencyMatrix A = sample_adjacency(model, opt.seed);
  if (!graph_out.empty()) {
    std::ofstream f(graph_out);
    if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + graph_out);
    write_edge_list(f, A);
  }

  const TwoBlockSpectrum ts = two_block_spectrum(n, p, q);
  const double beta = 5.0 / 794.0;
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix centers(2, 2);
  centers << s, s, s, -s;

  ProtocolConfig config;
  config.k = 2;
  config.alpha = alpha;
  config.parametric_spec = spec;
  config.envelope.d_max = expected_degree_bound(model);
  config.centrality = CentralityConfig{CentralityKind::Katz, beta, spectral_radius(model.P), {}};
  config.clustering = ClusteringConfig{center_margin(centers), centers, std::nullopt, 2};
  config.selection_m = 10;
  const DiagnosticReport r = run_protocol(A, config);

  json::Value constants = json::Value::object();
  constants.set("n", n);
  constants.set("p", p);
  constants.set("q", q);
  constants.set("lambda1", ts.lambda1);
  constants.set("lambda2", ts.lambda2);
  constants.set("lambda_rest", ts.lambda_rest);
  constants.set("gap2", ts.gap2);
  constants.set("d_max", expected_degree_bound(model));
  constants.set("margin", center_margin(centers));
  constants.set("katz_beta", beta);
  constants.set("katz_modulus", katz_modulus(beta));
  constants.set("hamming_radius_formula", "ceil(3200 r^2)");

  json::Value body = json::Value::object();
  body.set("seed", static_cast<unsigned long long>(opt.seed));
  body.set("constants", std::move(constants));
  body.set("protocol", to_json(r));
  emit(opt, opt.format == "csv" ? diagnostics_csv(r) : report_document("example-sbm", std::move(body)));
  return 0;
}

void add_common(CLI::App* sub, CommonOptions& opt, bool graph) {
  if (graph) {
    sub->add_option("--graph", opt.graph, "edge list (u<TAB>v per line)");
    sub->add_option("--config", opt.config, "protocol config JSON");
  }
  sub->add_option("--alpha", opt.alpha, "level in (0,1)");
  sub->add_option("--seed", opt.seed, "random seed");
  sub->add_option("--out", opt.out, "output path (default stdout)");
  sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified spectral inference for random graphs"};
  app.require_subcommand(1);
  CommonOptions opt;

  auto* certify_cmd = app.add_subcommand("certify", "run the certified protocol and emit the report");
  auto* bands_cmd = app.add_subcommand("bands", "centrality bands");
  auto* cluster_cmd = app.add_subcommand("cluster", "clustering confidence region");
  auto* stability_cmd = app.add_subcommand("stability", "top-m selection stability certificate");
  auto* fairness_cmd = app.add_subcommand("fairness", "fairness-constrained post-processing");
  auto* filtration_cmd = app.add_subcommand("filtration", "threshold-graph filtration envelope");
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo coverage experiment");
  auto* example_cmd = app.add_subcommand("example-sbm", "two-block worked example with certificates");
  for (auto* sub : {certify_cmd, bands_cmd, cluster_cmd, stability_cmd, fairness_cmd, filtration_cmd}) {
    add_common(sub, opt, true);
  }
  add_common(simulate_cmd, opt, false);
  add_common(example_cmd, opt, false);

  std::string x_csv, y_csv;
  std::vector<double> t_grid;
  filtration_cmd->add_option("--x", x_csv, "embedding X as dense CSV");
  filtration_cmd->add_option("--y", y_csv, "embedding Y as dense CSV");
  filtration_cmd->add_option("--t", t_grid, "thresholds")->delimiter(',');

  std::string model_path, claims = "all", mode = "oracle";
  std::uint64_t reps = 500;
  int k = 2;
  unsigned threads = 1;
  simulate_cmd->add_option("--model", model_path, "model JSON");
  simulate_cmd->add_option("--reps", reps, "replications");
  simulate_cmd->add_option("--claims", claims, "all|deviation|subspace|cluster|centrality");
  simulate_cmd->add_option("--k", k, "embedding dimension");
  simulate_cmd->add_option("--threads", threads, "worker threads");
  simulate_cmd->add_option("--mode", mode, "oracle or declared");

  std::string graph_out;
  example_cmd->add_option("--graph-out", graph_out, "also write the sampled edge list here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*certify_cmd) return run_certify(opt);
    if (*bands_cmd) return run_bands(opt);
    if (*cluster_cmd) return run_cluster(opt);
    if (*stability_cmd) return run_stability(opt);
    if (*fairness_cmd) return run_fairness(opt);
    if (*filtration_cmd) return run_filtration(opt, x_csv, y_csv, t_grid);
    if (*simulate_cmd) return run_simulate(opt, model_path, reps, claims, k, threads, mode);
    if (*example_cmd) return run_example_sbm(opt, graph_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_input_error() ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
