#include "specgraph/protocol.hpp"

#include <cmath>
#include <sstream>

#include "json_util.hpp"
#include "specgraph/io.hpp"
#include "specgraph/linalg.hpp"

namespace specgraph {

namespace {

// Gaps this close to zero (relative to the spectrum scale) are collisions.
constexpr double kCollisionTol = 1e-9;

std::string real_str(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool is_equal_two_block(const SbmSpec& s, double& p, double& q) {
  if (s.connectivity.rows() != 2) return false;
  const Eigen::VectorXd sizes = s.membership.colwise().sum().transpose();
  if (sizes[0] != sizes[1]) return false;
  if (s.connectivity(0, 0) != s.connectivity(1, 1)) return false;
  p = s.connectivity(0, 0);
  q = s.connectivity(0, 1);
  return q <= p && q >= 0.0 && p <= 1.0;
}

double snapped_gap(const Vector& eigenvalues, int k) {
  const double gap = eigengap(eigenvalues, k);
  const double scale = std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
  return gap <= kCollisionTol * scale ? 0.0 : gap;
}

}  // namespace

ProtocolConfig parse_protocol_config(const std::string& json_text) {
  using namespace detail;
  const json doc = parse_json(json_text, "config");
  if (!doc.is_object()) fail(ErrorCode::ParseError, "config: expected a JSON object");
  ProtocolConfig c;
  c.k = get_int(required_key(doc, "k", "config"), "k");
  if (const json* a = optional_key(doc, "alpha")) c.alpha = get_real(*a, "alpha");
  if (const json* env = optional_key(doc, "envelope")) {
    if (const json* d = optional_key(*env, "d_max")) c.envelope.d_max = get_real(*d, "d_max");
    if (const json* g = optional_key(*env, "gap_lower")) {
      c.envelope.gap_lower = get_real(*g, "gap_lower");
    }
  }
  if (const json* spec = optional_key(doc, "parametric")) {
    c.parametric_spec = parse_model_document(spec->dump()).spec;
  }
  if (const json* u = optional_key(doc, "usvt")) {
    UsvtConfig usvt;
    if (const json* s = optional_key(*u, "threshold_scale")) {
      usvt.threshold_scale = get_real(*s, "threshold_scale");
    }
    if (const json* e = optional_key(*u, "eps_P")) usvt.eps_P = get_real(*e, "eps_P");
    c.usvt = usvt;
  }
  if (const json* cj = optional_key(doc, "centrality")) {
    CentralityConfig cent;
    const json& type = required_key(*cj, "type", "centrality");
    const std::string t = type.is_string() ? type.get<std::string>() : "";
    if (t == "katz") {
      cent.kind = CentralityKind::Katz;
      cent.beta = get_real(required_key(*cj, "beta", "centrality"), "beta");
      if (const json* r = optional_key(*cj, "rho_bound")) cent.rho_bound = get_real(*r, "rho_bound");
    } else if (t == "eigenvector") {
      cent.kind = CentralityKind::Eigenvector;
      if (const json* g = optional_key(*cj, "gamma")) cent.gamma = get_real(*g, "gamma");
    } else {
      fail(ErrorCode::ParseError, "centrality: type must be \"katz\" or \"eigenvector\"");
    }
    c.centrality = cent;
  }
  if (const json* cl = optional_key(doc, "clustering")) {
    ClusteringConfig clus;
    if (const json* m = optional_key(*cl, "margin")) clus.margin = get_real(*m, "margin");
    if (const json* ce = optional_key(*cl, "centers")) clus.centers = get_matrix(*ce, "centers");
    if (const json* cr = optional_key(*cl, "c_row")) clus.c_row = get_real(*cr, "c_row");
    if (const json* K = optional_key(*cl, "num_clusters")) clus.num_clusters = get_int(*K, "num_clusters");
    c.clustering = clus;
  }
  if (const json* sel = optional_key(doc, "selection")) {
    c.selection_m = get_int(required_key(*sel, "m", "selection"), "m");
  }
  if (const json* f = optional_key(doc, "fairness")) {
    FairnessConfig fc;
    fc.y = get_vector(required_key(*f, "y", "fairness"), "y");
    fc.s = get_int_list(required_key(*f, "s", "fairness"), "s");
    if (const json* t = optional_key(*f, "tau")) fc.tau = get_real(*t, "tau");
    if (const json* e = optional_key(*f, "epsilon")) fc.epsilon = get_real(*e, "epsilon");
    c.fairness = fc;
  }
  if (const json* fl = optional_key(doc, "filtration")) {
    c.t_grid = get_real_list(required_key(*fl, "t_grid", "filtration"), "t_grid");
  }
  return c;
}

double observed_gap_proxy(const AdjacencyMatrix& A, int k) {
  return eigengap(symmetric_eigenvalues(A.A), k);
}

double parametric_gap_certificate(const ModelSpec& spec, int k) {
  if (std::holds_alternative<RdpgSpec>(spec)) {
    fail(ErrorCode::UnsupportedSpec, "parametric gap certificates cover SBM and DCSBM only");
  }
  if (const auto* sbm = std::get_if<SbmSpec>(&spec)) {
    double p = 0.0, q = 0.0;
    if (k == 2 && sbm->membership.rows() % 2 == 0 && is_equal_two_block(*sbm, p, q)) {
      return two_block_spectrum(static_cast<int>(sbm->membership.rows()), p, q).gap2;
    }
  }
  const ProbabilityModel model = build_probability_matrix(spec);
  return snapped_gap(symmetric_eigenvalues(model.P), k);
}

Matrix usvt_denoise(const AdjacencyMatrix& A, double threshold_scale) {
  if (!(threshold_scale > 0.0)) fail(ErrorCode::InvalidArgument, "threshold_scale must be positive");
  const auto n = A.n();
  Matrix P_hat = Matrix::Zero(n, n);
  if (n < 2) return P_hat;
  const double density = A.A.sum() / (static_cast<double>(n) * static_cast<double>(n - 1));
  if (density <= 0.0) return P_hat;
  const double threshold = threshold_scale * std::sqrt(static_cast<double>(n) * density);
  const Eigensystem es = symmetric_eigensystem(A.A);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(es.values[j]) >= threshold) {
      P_hat.noalias() += es.values[j] * es.vectors.col(j) * es.vectors.col(j).transpose();
    }
  }
  P_hat = P_hat.cwiseMax(0.0).cwiseMin(1.0);
  P_hat = 0.5 * (P_hat + P_hat.transpose()).eval();
  P_hat.diagonal().setZero();
  return P_hat;
}

DiagnosticReport run_protocol(const AdjacencyMatrix& A, const ProtocolConfig& config) {
  const auto n = A.n();
  if (config.k < 1 || config.k >= n) {
    fail(ErrorCode::KOutOfRange, "k = " + std::to_string(config.k) + " outside [1, " +
                                     std::to_string(n - 1) + "]");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    fail(ErrorCode::BadLevel, "alpha must lie in (0,1)");
  }

  DiagnosticReport rep;
  rep.k = config.k;
  rep.n = n;
  rep.alpha = config.alpha;

  // Step 1: spectral objects of A.
  const Vector eigenvalues = symmetric_eigenvalues(A.A);
  rep.observed_gap_proxy = eigengap(eigenvalues, config.k);

  std::optional<ProbabilityModel> declared_model;
  std::string parametric_note;
  if (config.parametric_spec) {
    declared_model = build_probability_matrix(*config.parametric_spec);
    if (declared_model->n() != n) {
      fail(ErrorCode::ShapeMismatch, "parametric model has " + std::to_string(declared_model->n()) +
                                         " nodes, graph has " + std::to_string(n));
    }
  }

  // Step 2 / D1: deviation quantile from a degree envelope.
  std::optional<double> d_max;
  if (config.envelope.d_max) {
    if (!(*config.envelope.d_max >= 0.0)) fail(ErrorCode::InvalidArgument, "d_max must be >= 0");
    d_max = *config.envelope.d_max;
    rep.d1 = {true, "declared d_max = " + real_str(*d_max)};
  } else if (declared_model) {
    d_max = expected_degree_bound(*declared_model);
    rep.d1 = {true, "d_max = " + real_str(*d_max) + " from the declared parametric model"};
  } else {
    rep.d1 = {false, "no_degree_envelope"};
  }
  if (d_max) rep.quantile = deviation_quantile(*d_max, n, config.alpha);

  // Step 3 / D2: gap certificate.
  std::optional<Matrix> P_hat;
  if (config.usvt) {
    P_hat = usvt_denoise(A, config.usvt->threshold_scale);
    if (config.usvt->eps_P) {
      rep.uncertified_deviation_bound = symmetric_operator_norm(A.A - *P_hat) + *config.usvt->eps_P;
    }
  }
  {
    std::optional<double> g;
    std::string source;
    if (config.parametric_spec) {
      try {
        g = parametric_gap_certificate(*config.parametric_spec, config.k);
        source = "parametric";
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsupportedSpec) throw;
        parametric_note = "; parametric certificate unsupported for this model";
      }
    }
    if (!g && config.envelope.gap_lower) {
      g = *config.envelope.gap_lower;
      source = "declared";
    }
    if (!g && P_hat && config.usvt->eps_P) {
      if (!(*config.usvt->eps_P >= 0.0)) fail(ErrorCode::InvalidArgument, "eps_P must be >= 0");
      const double gap_hat = eigengap(symmetric_eigenvalues(*P_hat), config.k);
      g = weyl_gap_certificate(gap_hat, *config.usvt->eps_P);
      source = "usvt-weyl (gap(P_hat) = " + real_str(gap_hat) + ", eps_P = " +
               real_str(*config.usvt->eps_P) + ")";
    }
    if (g && *g > 0.0) {
      rep.gap_certificate = *g;
      rep.d2 = {true, source + " gap_lower = " + real_str(*g) + parametric_note};
    } else if (g) {
      rep.d2 = {false, "no_gap_certificate: " + source + " bound is " + real_str(*g) + parametric_note};
    } else {
      rep.d2 = {false, "no_gap_certificate" + parametric_note};
    }
  }

  // D3: centrality domain.
  std::optional<double> modulus;
  std::optional<Vector> scores;
  CentralityFunctional functional;
  if (!config.centrality) {
    rep.d3 = {false, "no_centrality_functional"};
  } else if (config.centrality->kind == CentralityKind::Katz) {
    const double beta = config.centrality->beta;
    if (!(beta > 0.0)) fail(ErrorCode::InvalidArgument, "Katz beta must be positive");
    functional = {CentralityKind::Katz, beta};
    const double limit = 1.0 / (2.0 * beta);
    std::optional<double> rho;
    std::string source;
    if (config.centrality->rho_bound) {
      rho = *config.centrality->rho_bound;
      source = "declared rho bound";
    } else if (declared_model) {
      rho = spectral_radius(declared_model->P);
      source = "parametric rho(P)";
    } else if (d_max) {
      rho = *d_max;
      source = "rho(P) <= d_max";
    }
    const double rho_A = spectral_radius(A.A);
    if (!rho) {
      rep.d3 = {false, "katz_domain_undeclared"};
    } else if (*rho > limit) {
      rep.d3 = {false, "population_outside_katz_domain: " + source + " " + real_str(*rho) +
                           " > 1/(2 beta) = " + real_str(limit)};
    } else if (rho_A > limit) {
      rep.d3 = {false, "observed_outside_katz_domain: rho(A) = " + real_str(rho_A) +
                           " > 1/(2 beta) = " + real_str(limit)};
    } else {
      rep.d3 = {true, source + " " + real_str(*rho) + " <= 1/(2 beta) = " + real_str(limit) +
                          "; rho(A) = " + real_str(rho_A)};
      modulus = katz_modulus(beta);
      scores = katz_centrality(A.A, beta);
    }
  } else {
    std::optional<double> gamma = config.centrality->gamma;
    std::string source = "declared gamma";
    if (!gamma && declared_model) {
      gamma = snapped_gap(symmetric_eigenvalues(declared_model->P), 1);
      source = "parametric gap_1(P)";
    }
    functional = {CentralityKind::Eigenvector, gamma.value_or(0.0)};
    if (!gamma || !(*gamma > 0.0)) {
      rep.d3 = {false, "eigenvector_gap_undeclared"};
    } else {
      try {
        scores = eigenvector_centrality(A.A).scores;
        modulus = eigenvector_modulus(*gamma);
        rep.d3 = {true, source + " = " + real_str(*gamma)};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateTopEigenvalue) throw;
        rep.d3 = {false, "observed_top_eigenvalue_degenerate"};
      }
    }
  }

  // D4: clustering margin.
  std::optional<double> margin;
  if (config.clustering && config.clustering->margin) {
    margin = *config.clustering->margin;
  } else if (config.clustering && config.clustering->centers) {
    margin = center_margin(*config.clustering->centers);
  }
  if (!margin) {
    rep.d4 = {false, "no_margin_declared"};
  } else if (!(*margin > 0.0)) {
    rep.d4 = {false, "nonpositive_margin"};
  } else {
    rep.d4 = {true, (config.clustering->margin ? "declared Delta = " : "Delta from declared centers = ") +
                        real_str(*margin)};
  }

  // Reason = failed flag names with their reason codes, e.g. "D2:no_gap_certificate".
  using Need = std::pair<const char*, const FlagStatus*>;
  auto refuse = [&](const std::string& output, std::initializer_list<Need> needs) {
    std::string reason;
    for (const auto& [name, flag] : needs) {
      if (flag->pass) continue;
      if (!reason.empty()) reason += ",";
      reason += std::string(name) + ":" + flag->provenance.substr(0, flag->provenance.find(':'));
    }
    rep.refusals.push_back({output, reason});
  };

  const bool d1 = rep.d1.pass, d2 = rep.d2.pass, d3 = rep.d3.pass, d4 = rep.d4.pass;
  const double q = rep.quantile ? rep.quantile->q : 0.0;

  // Step 4: subspace region.
  if (d1 && d2) {
    rep.subspace = subspace_region(A, config.k, {*d_max, *rep.gap_certificate}, config.alpha);
  } else {
    refuse("subspace_region", {{"D1", &rep.d1}, {"D2", &rep.d2}});
  }

  // Step 5: centrality bands and selection stability.
  if (d1 && d3) {
    rep.bands = centrality_bands(*scores, *modulus, q, config.alpha, functional, true);
  } else {
    refuse("centrality_bands", {{"D1", &rep.d1}, {"D3", &rep.d3}});
  }
  if (config.selection_m) {
    if (d1 && d3) {
      rep.stability = stability_certificate(*scores, *config.selection_m, *modulus, q);
    } else {
      refuse("stability_certificate", {{"D1", &rep.d1}, {"D3", &rep.d3}});
    }
  }

  // Step 6: clustering region.
  if (d1 && d2 && d4) {
    ClusteringInputs in;
    in.margin = *margin;
    in.centers = config.clustering->centers;
    in.num_clusters = config.clustering->num_clusters;
    in.c_row = config.clustering->c_row;
    rep.cluster = cluster_region(*rep.subspace, in);
  } else {
    refuse("cluster_region", {{"D1", &rep.d1}, {"D2", &rep.d2}, {"D4", &rep.d4}});
  }

  if (config.fairness) {
    if (d1 && d3) {
      FairnessProblem problem{*scores, config.fairness->y, config.fairness->s, config.fairness->tau,
                              config.fairness->epsilon};
      problem.validate();
      const double r = rep.bands->half_width;
      if (problem.epsilon < r / problem.tau) {
        rep.refusals.push_back({"fairness", "insufficient_tolerance"});
      } else {
        FairnessOutput out;
        out.band_radius = r;
        out.effective_epsilon = problem.epsilon - r / problem.tau;
        out.solution = fair_optimize(problem, out.effective_epsilon);
        out.transfer = feasibility_transfer_check(problem, out.solution.theta, r);
        rep.fairness = out;
      }
    } else {
      refuse("fairness", {{"D1", &rep.d1}, {"D3", &rep.d3}});
    }
  }

  if (config.t_grid) {
    const bool have_row = config.clustering && config.clustering->c_row;
    const FlagStatus row_flag{have_row, have_row ? "declared c_row" : "no_rowwise_certificate"};
    if (d1 && d2 && have_row) {
      FiltrationOutput out;
      out.eta = *config.clustering->c_row * rep.subspace->radius;
      out.brackets = filtration_brackets(rep.subspace->center.matrix(), out.eta, *config.t_grid);
      rep.filtration = std::move(out);
    } else {
      refuse("filtration", {{"D1", &rep.d1}, {"D2", &rep.d2}, {"row", &row_flag}});
    }
  }
  return rep;
}

}  // namespace specgraph
