#include "specgraph/report_json.hpp"

#include <limits>
#include <sstream>

namespace specgraph {

using json::Value;

namespace {

Value node_set(const NodeSet& s) { return json::from(std::vector<int>(s.begin(), s.end())); }

Value flag(const FlagStatus& f) {
  Value v = Value::object();
  v.set("pass", f.pass);
  v.set("provenance", f.provenance);
  return v;
}

Value theta_value(double t) {
  if (t == std::numeric_limits<double>::infinity()) return Value("+inf");
  if (t == -std::numeric_limits<double>::infinity()) return Value("-inf");
  return Value(t);
}

}  // namespace

Value to_json(const DeviationQuantile& q) {
  Value v = Value::object();
  v.set("q", q.q);
  v.set("alpha", q.alpha);
  v.set("variance_bound", q.v_bound);
  v.set("n", static_cast<long long>(q.n));
  v.set("method", q.method);
  return v;
}

Value to_json(const SubspaceRegion& region) {
  Value v = Value::object();
  v.set("k", static_cast<long long>(region.center.k()));
  v.set("radius", region.radius);
  v.set("alpha", region.alpha);
  v.set("informative", region.informative);
  v.set("variance_bound", region.certificates.variance_bound);
  v.set("gap_lower", region.certificates.gap_lower);
  v.set("quantile", region.quantile.q);
  v.set("center", json::from(region.center.matrix()));
  return v;
}

Value to_json(const CentralityBand& band) {
  Value v = Value::object();
  v.set("functional", band.functional.tag());
  v.set("alpha", band.alpha);
  v.set("half_width", band.half_width);
  v.set("domain_certified", band.domain_certified);
  v.set("point", json::from(band.point));
  v.set("lower", json::from(band.lower()));
  v.set("upper", json::from(band.upper()));
  return v;
}

Value to_json(const StabilityCertificate& cert) {
  Value v = Value::object();
  v.set("m", cert.m);
  v.set("observed_margin", cert.observed_margin ? Value(*cert.observed_margin) : Value());
  v.set("threshold", cert.threshold);
  v.set("certified", cert.certified);
  v.set("selected_set", cert.selected_set ? node_set(*cert.selected_set) : Value());
  return v;
}

Value to_json(const ClusterRegion& region) {
  Value v = Value::object();
  v.set("hamming_radius", region.hamming_radius);
  v.set("mean_square_radius", region.mean_square_radius);
  v.set("rowwise_radius", region.rowwise_radius ? Value(*region.rowwise_radius) : Value());
  v.set("vacuous", region.vacuous);
  v.set("alpha", region.alpha);
  v.set("margin", region.margin_used);
  v.set("margin_provenance", region.margin_provenance);
  v.set("subspace_radius", region.subspace_radius);
  v.set("labels", json::from(region.labels));
  return v;
}

Value to_json(const FairnessOutput& f) {
  Value v = Value::object();
  v.set("band_radius", f.band_radius);
  v.set("effective_epsilon", f.effective_epsilon);
  Value theta = Value::array();
  theta.push(theta_value(f.solution.theta[0]));
  theta.push(theta_value(f.solution.theta[1]));
  v.set("theta", std::move(theta));
  v.set("loss", f.solution.loss);
  v.set("parity_gap", f.solution.parity);
  v.set("witness", f.solution.witness);
  v.set("transfer_passes", f.transfer.passes);
  v.set("transfer_required", f.transfer.required);
  return v;
}

Value to_json(const FiltrationOutput& f) {
  Value v = Value::object();
  v.set("eta", f.eta);
  Value levels = Value::array();
  for (const auto& b : f.brackets) {
    Value l = Value::object();
    l.set("t", b.t);
    l.set("edges_min", b.edges_min);
    l.set("edges_max", b.edges_max);
    l.set("components_min", b.components_min);
    l.set("components_max", b.components_max);
    levels.push(std::move(l));
  }
  v.set("levels", std::move(levels));
  return v;
}

Value to_json(const FiltrationReport& r) {
  Value v = Value::object();
  v.set("eta", r.eta);
  v.set("d_filt", r.d_filt);
  v.set("d_filt_within_2eta", r.d_filt_within);
  v.set("all_inclusions_hold", r.all_inclusions_hold());
  Value levels = Value::array();
  for (const auto& l : r.levels) {
    Value e = Value::object();
    e.set("t", l.t);
    e.set("lower_inclusion", l.lower_inclusion);
    e.set("upper_inclusion", l.upper_inclusion);
    e.set("edges_lower", l.edges_lower);
    e.set("edges_y", l.edges_y);
    e.set("edges_upper", l.edges_upper);
    e.set("components_lower", l.components_lower);
    e.set("components_y", l.components_y);
    e.set("components_upper", l.components_upper);
    levels.push(std::move(e));
  }
  v.set("levels", std::move(levels));
  return v;
}

Value to_json(const DiagnosticReport& r) {
  Value v = Value::object();
  v.set("n", static_cast<long long>(r.n));
  v.set("k", r.k);
  v.set("alpha", r.alpha);
  Value diag = Value::object();
  diag.set("D1", flag(r.d1));
  diag.set("D2", flag(r.d2));
  diag.set("D3", flag(r.d3));
  diag.set("D4", flag(r.d4));
  v.set("diagnostics", std::move(diag));
  v.set("observed_gap_proxy", r.observed_gap_proxy);
  v.set("observed_gap_proxy_note", "diagnostic only; not a certificate");
  v.set("quantile", r.quantile ? to_json(*r.quantile) : Value());
  v.set("gap_certificate", r.gap_certificate ? Value(*r.gap_certificate) : Value());
  v.set("uncertified_deviation_bound",
        r.uncertified_deviation_bound ? Value(*r.uncertified_deviation_bound) : Value());
  Value outputs = Value::object();
  if (r.subspace) outputs.set("subspace_region", to_json(*r.subspace));
  if (r.bands) outputs.set("centrality_bands", to_json(*r.bands));
  if (r.stability) outputs.set("stability_certificate", to_json(*r.stability));
  if (r.cluster) outputs.set("cluster_region", to_json(*r.cluster));
  if (r.fairness) outputs.set("fairness", to_json(*r.fairness));
  if (r.filtration) outputs.set("filtration", to_json(*r.filtration));
  v.set("outputs", std::move(outputs));
  Value refusals = Value::array();
  for (const auto& ref : r.refusals) {
    Value e = Value::object();
    e.set("output", ref.output);
    e.set("result", "no certificate");
    e.set("reason", ref.reason);
    refusals.push(std::move(e));
  }
  v.set("refusals", std::move(refusals));
  return v;
}

Value to_json(const AuditCounter& a) {
  Value v = Value::object();
  v.set("name", a.name);
  v.set("checks", static_cast<unsigned long long>(a.checks));
  v.set("violations", static_cast<unsigned long long>(a.violations));
  v.set("max_excess", a.checks > 0 ? Value(a.max_excess) : Value());
  return v;
}

Value to_json(const CoverageResult& r) {
  Value v = Value::object();
  v.set("replications", static_cast<unsigned long long>(r.replications));
  v.set("alpha", r.alpha);
  v.set("base_seed", static_cast<unsigned long long>(r.base_seed));
  v.set("mode", r.mode);
  v.set("quantile", r.quantile);
  v.set("variance_bound", r.variance_bound);
  v.set("gap_lower", r.gap_lower);
  v.set("subspace_radius", r.subspace_radius);
  v.set("subspace_certified", r.subspace_certified);
  v.set("informative", r.informative);
  v.set("hamming_radius", r.hamming_radius ? Value(*r.hamming_radius) : Value());
  v.set("band_half_width", r.band_half_width ? Value(*r.band_half_width) : Value());
  v.set("katz_beta", r.katz_beta ? Value(*r.katz_beta) : Value());
  Value claims = Value::array();
  for (const auto& c : r.claims) {
    Value e = Value::object();
    e.set("claim", c.claim);
    e.set("replications", static_cast<unsigned long long>(c.replications));
    e.set("hits", static_cast<unsigned long long>(c.hits));
    e.set("empirical_coverage", c.empirical_coverage);
    e.set("target", c.target);
    e.set("binomial_sd", c.binomial_sd);
    claims.push(std::move(e));
  }
  v.set("claims", std::move(claims));
  Value audits = Value::array();
  for (const auto& a : r.audits) audits.push(to_json(a));
  v.set("audits", std::move(audits));
  return v;
}

Value to_json(const ModulusAudit& a) {
  Value v = Value::object();
  v.set("functional", a.functional);
  v.set("stated_modulus", a.stated_modulus);
  v.set("trials", static_cast<unsigned long long>(a.trials));
  v.set("skipped", static_cast<unsigned long long>(a.skipped));
  v.set("max_ratio_2", a.max_ratio_2);
  v.set("max_ratio_inf", a.max_ratio_inf);
  return v;
}

std::string report_document(const std::string& kind, Value body) {
  Value doc = Value::object();
  doc.set("schema_version", kReportSchemaVersion);
  doc.set("kind", kind);
  doc.set("report", std::move(body));
  return doc.dump(2);
}

std::string coverage_csv(const CoverageResult& r) {
  std::ostringstream os;
  os << "kind,name,replications_or_checks,hits_or_violations,value,target,binomial_sd\n";
  for (const auto& c : r.claims) {
    os << "claim," << c.claim << ',' << c.replications << ',' << c.hits << ','
       << json::format_real(c.empirical_coverage) << ',' << json::format_real(c.target) << ','
       << json::format_real(c.binomial_sd) << '\n';
  }
  for (const auto& a : r.audits) {
    os << "audit," << a.name << ',' << a.checks << ',' << a.violations << ','
       << (a.checks > 0 ? json::format_real(a.max_excess) : std::string()) << ",,\n";
  }
  return os.str();
}

}  // namespace specgraph
