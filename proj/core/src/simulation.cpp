#include "specgraph/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "specgraph/concentration.hpp"
#include "specgraph/error.hpp"
#include "specgraph/fairness.hpp"
#include "specgraph/filtration.hpp"
#include "specgraph/ridge.hpp"
#include "specgraph/rng.hpp"
#include "specgraph/selection.hpp"
#include "specgraph/subspace_region.hpp"

namespace specgraph {

namespace {

constexpr double kArithmeticTol = 1e-9;

// Auxiliary streams are decorrelated from the sampling stream of the same seed.
constexpr std::uint64_t kAuxStream = 0x5bd1e9955bd1e995ULL;

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform01(rng) * (hi - lo + 1));
}

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = standard_normal(rng);
  }
  return M;
}

Matrix symmetric_noise(Rng& rng, Eigen::Index n) {
  Matrix E = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) E(i, j) = E(j, i) = standard_normal(rng);
  }
  return E;
}

OrthonormalBasis random_basis(Rng& rng, Eigen::Index n, Eigen::Index k) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(rng, n, k));
  return OrthonormalBasis(qr.householderQ() * Matrix::Identity(n, k));
}

std::vector<int> random_groups(Rng& rng, int n) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (auto& g : s) g = uniform01(rng) < 0.5 ? 0 : 1;
  s[0] = 0;
  s[1] = 1;
  return s;
}

std::optional<NodeSet> unique_top(const Vector& x, int m) {
  const TopSelection sel = top_m_selection(x, m, 1);
  if (!sel.unique()) return std::nullopt;
  return sel.sets.front();
}

double threshold_shift(const Thresholds& a, const Thresholds& b) {
  return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
}

// Claim indices inside a replication outcome.
enum { kDev, kSub, kClu, kCen, kNumClaims };

const char* const kClaimNames[kNumClaims] = {"deviation", "subspace", "cluster", "centrality"};

const char* const kAuditNames[] = {
    "davis_kahan",          "procrustes_frobenius", "rounding_mean_square",
    "stability_top_m",      "ridge_risk",           "fairness_transfer",
    "fairness_tradeoff",    "filtration_dfilt",     "filtration_sandwich",
};
constexpr int kNumAudits = sizeof(kAuditNames) / sizeof(kAuditNames[0]);
enum {
  kAuditDK,
  kAuditFrob,
  kAuditRound,
  kAuditStab,
  kAuditRidge,
  kAuditTransfer,
  kAuditTradeoff,
  kAuditDfilt,
  kAuditSandwich,
};

struct Outcome {
  bool evaluated[kNumClaims] = {false, false, false, false};
  bool hit[kNumClaims] = {false, false, false, false};
  std::vector<AuditCounter> audits;
};

struct Truth {
  explicit Truth(OrthonormalBasis U) : U_star(std::move(U)) {}

  Eigen::Index n = 0;
  int k = 0;
  double q = 0.0;
  double gap_true = 0.0;
  double radius = 1.0;
  OrthonormalBasis U_star;
  std::optional<std::vector<int>> labels;
  std::optional<Matrix> centers;
  double margin = 0.0;
  std::optional<int> hamming_radius;
  std::optional<double> beta;
  Vector katz_truth;
  std::optional<NodeSet> truth_top;
  std::vector<double> t_grid;
};

void audit_transfer_once(Rng& rng, const Vector& x_hat, const Vector& x_star, AuditCounter& out) {
  const auto n = static_cast<int>(x_hat.size());
  const double r = (x_hat - x_star).cwiseAbs().maxCoeff();
  const double tau = r > 0.0 ? 10.0 * r : 1.0;
  const double eps = std::min(1.0, r / tau + 0.05);
  FairnessProblem problem{x_hat, Vector::Constant(n, 0.5), random_groups(rng, n), tau, eps};
  Vector sorted = x_hat;
  std::sort(sorted.data(), sorted.data() + n);
  const double median = sorted[n / 2];
  const Thresholds theta{median + uniform(rng, -1.0, 1.0) * tau,
                         median + uniform(rng, -1.0, 1.0) * tau};
  const TransferCheck check = feasibility_transfer_check(problem, theta, r);
  if (!check.passes) return;
  const double parity_star = parity_gap(logistic_decisions(x_star, problem.s, tau, theta), problem.s);
  out.record(parity_star, eps, 1e-12);
}

void audit_tradeoff_once(Rng& rng, const Vector& x, const Vector& y, AuditCounter& out) {
  const auto n = static_cast<int>(x.size());
  const std::vector<int> s = random_groups(rng, n);
  const double tau = uniform(rng, 0.05, 2.0);
  const double lo = x.minCoeff() - 2.0 * tau, hi = x.maxCoeff() + 2.0 * tau;
  const Thresholds a{uniform(rng, lo, hi), uniform(rng, lo, hi)};
  const Thresholds b{uniform(rng, lo, hi), uniform(rng, lo, hi)};
  const Vector da = logistic_decisions(x, s, tau, a);
  const Vector db = logistic_decisions(x, s, tau, b);
  const TradeoffBounds tb = tradeoff_bounds(da, db, y, tau, threshold_shift(a, b));
  out.record(std::abs(tb.loss_gap), tb.bound_l2, 1e-12);
  out.record(std::abs(tb.loss_gap), tb.bound_shift, 1e-12);
}

void audit_filtration_once(const Matrix& X, const Matrix& Y, const std::vector<double>& t_grid,
                           AuditCounter& dfilt, AuditCounter& sandwich) {
  const FiltrationReport rep = filtration_envelope(X, Y, t_grid);
  dfilt.record(rep.d_filt, 2.0 * rep.eta, 1e-12);
  for (const auto& level : rep.levels) {
    sandwich.record(level.lower_inclusion ? 0.0 : 1.0, 0.0, 0.0);
    sandwich.record(level.upper_inclusion ? 0.0 : 1.0, 0.0, 0.0);
  }
}

Outcome run_replication(const ProbabilityModel& model, const CoverageConfig& config,
                        const Truth& truth, std::uint64_t seed) {
  Outcome out;
  out.audits.resize(kNumAudits);
  for (int a = 0; a < kNumAudits; ++a) out.audits[static_cast<std::size_t>(a)].name = kAuditNames[a];
  Rng aux(mix_seed(seed ^ kAuxStream));

  const AdjacencyMatrix A = sample_adjacency(model, seed);
  const double dev = symmetric_operator_norm(A.A - model.P);
  const bool on_event = dev <= truth.q;
  if (config.claims & kClaimDeviation) {
    out.evaluated[kDev] = true;
    out.hit[kDev] = on_event;
  }

  const bool need_subspace = (config.claims & (kClaimSubspace | kClaimCluster)) != 0;
  if (need_subspace) {
    const Eigensystem es = symmetric_eigensystem(A.A);
    const OrthonormalBasis U_hat(es.vectors.leftCols(truth.k));
    const double dgr = grassmann_distance(U_hat, truth.U_star);
    if (config.claims & kClaimSubspace) {
      out.evaluated[kSub] = true;
      out.hit[kSub] = dgr <= truth.radius;
    }
    if (truth.gap_true > 0.0) {
      out.audits[kAuditDK].record(dgr, 2.0 * dev / truth.gap_true, kArithmeticTol);
    }
    const ProcrustesResult pr = procrustes_align(U_hat, truth.U_star);
    const double frob2 = pr.residual * pr.residual;
    out.audits[kAuditFrob].record(frob2, frobenius_subspace_bound(dgr, truth.k), kArithmeticTol);

    const Vector y = (gaussian_matrix(aux, truth.n, 1).col(0));
    out.audits[kAuditRidge].record(
        std::abs(ridge_risk(U_hat, y, config.ridge_lambda) -
                 ridge_risk(truth.U_star, y, config.ridge_lambda)),
        ridge_risk_bound(y, config.ridge_lambda, dgr, truth.n), 1e-10);

    audit_filtration_once(pr.aligned.matrix(), truth.U_star.matrix(), truth.t_grid,
                          out.audits[kAuditDfilt], out.audits[kAuditSandwich]);

    if ((config.claims & kClaimCluster) && truth.centers) {
      SpectrumSummary spectrum;
      spectrum.k = truth.k;
      const SubspaceRegion region{U_hat,      truth.radius, config.alpha, truth.radius < 1.0,
                                  {},         {},           spectrum};
      ClusteringInputs inputs;
      inputs.margin = truth.margin;
      inputs.centers = truth.centers;
      inputs.reference = truth.U_star;
      const ClusterRegion cr = cluster_region(region, inputs);
      out.evaluated[kClu] = true;
      out.hit[kClu] = perm_hamming_distance(cr.labels, *truth.labels) <= cr.hamming_radius;
      int wrong = 0;
      for (std::size_t i = 0; i < cr.labels.size(); ++i) wrong += cr.labels[i] != (*truth.labels)[i];
      out.audits[kAuditRound].record(wrong, 16.0 * frob2 / (truth.margin * truth.margin),
                                     kArithmeticTol);
    }
  }

  if ((config.claims & kClaimCentrality) && truth.beta) {
    out.evaluated[kCen] = true;
    const double L = katz_modulus(*truth.beta);
    try {
      const Vector c_hat = katz_centrality(A.A, *truth.beta);
      const CentralityBand band = centrality_bands(c_hat, L, truth.q, config.alpha);
      out.hit[kCen] = band.contains(truth.katz_truth);

      const StabilityCertificate cert =
          stability_certificate(c_hat, config.selection_m, L, truth.q);
      if (cert.certified && on_event) {
        const bool same = truth.truth_top && *truth.truth_top == *cert.selected_set;
        out.audits[kAuditStab].record(same ? 0.0 : 1.0, 0.0, 0.0);
      }
      audit_transfer_once(aux, c_hat, truth.katz_truth, out.audits[kAuditTransfer]);
      Vector y(truth.n);
      for (Eigen::Index i = 0; i < truth.n; ++i) y[i] = uniform01(aux);
      audit_tradeoff_once(aux, c_hat, y, out.audits[kAuditTradeoff]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutsideDomain) throw;
      out.hit[kCen] = false;  // no band can be formed outside the domain
    }
  }
  return out;
}

}  // namespace

unsigned parse_claims(const std::string& text) {
  unsigned mask = 0;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "all") mask |= kClaimAll;
    else if (item == "deviation") mask |= kClaimDeviation;
    else if (item == "subspace") mask |= kClaimSubspace;
    else if (item == "cluster") mask |= kClaimCluster;
    else if (item == "centrality") mask |= kClaimCentrality;
    else fail(ErrorCode::InvalidArgument, "unknown claim \"" + item + "\"");
  }
  if (mask == 0) fail(ErrorCode::InvalidArgument, "no claims selected");
  return mask;
}

bool ClaimCoverage::meets(double sigmas) const {
  return empirical_coverage >= target - sigmas * binomial_sd;
}

void AuditCounter::record(double lhs, double rhs, double tol) {
  ++checks;
  max_excess = std::max(max_excess, lhs - rhs);
  if (lhs > rhs + tol) ++violations;
}

void AuditCounter::merge(const AuditCounter& other) {
  checks += other.checks;
  violations += other.violations;
  max_excess = std::max(max_excess, other.max_excess);
}

const ClaimCoverage* CoverageResult::claim(const std::string& name) const {
  for (const auto& c : claims) {
    if (c.claim == name) return &c;
  }
  return nullptr;
}

const AuditCounter* CoverageResult::audit(const std::string& name) const {
  for (const auto& a : audits) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

std::uint64_t CoverageResult::total_violations() const {
  std::uint64_t v = 0;
  for (const auto& a : audits) v += a.violations;
  return v;
}

CoverageResult coverage_experiment(const ProbabilityModel& model, const CoverageConfig& config,
                                   std::uint64_t replications, std::uint64_t base_seed) {
  const auto n = model.n();
  if (config.k < 1 || config.k >= n) {
    fail(ErrorCode::KOutOfRange, "k = " + std::to_string(config.k) + " outside [1, " +
                                     std::to_string(n - 1) + "]");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) fail(ErrorCode::BadLevel, "alpha must lie in (0,1)");
  if (replications == 0) fail(ErrorCode::InvalidArgument, "need at least one replication");
  validate_probability_matrix(model.P);

  const Eigensystem es_P = symmetric_eigensystem(model.P);
  Truth truth(OrthonormalBasis(es_P.vectors.leftCols(config.k)));
  truth.n = n;
  truth.k = config.k;
  truth.gap_true = eigengap(es_P.values, config.k);

  CoverageResult res;
  res.replications = replications;
  res.alpha = config.alpha;
  res.base_seed = base_seed;
  if (config.mode == CertificateMode::Oracle) {
    res.mode = "oracle";
    res.variance_bound = variance_proxy(model.P).v;
    res.gap_lower = truth.gap_true;
  } else {
    res.mode = "declared-envelope";
    if (!config.declared.d_max || !config.declared.gap_lower) {
      fail(ErrorCode::InvalidArgument, "declared-envelope mode needs d_max and gap_lower");
    }
    res.variance_bound = *config.declared.d_max;
    res.gap_lower = *config.declared.gap_lower;
  }
  truth.q = deviation_quantile(res.variance_bound, n, config.alpha).q;
  res.quantile = truth.q;
  res.subspace_certified = res.gap_lower > 0.0;
  truth.radius = res.subspace_certified ? davis_kahan_radius(truth.q, res.gap_lower).r : 1.0;
  res.subspace_radius = truth.radius;
  res.informative = res.subspace_certified && truth.radius < 1.0;

  // Cluster truth: SBM rows of U_star are constant within blocks.
  if (const auto* sbm = std::get_if<SbmSpec>(&model.spec)) {
    const std::vector<int> labels = sbm->labels();
    if (static_cast<Eigen::Index>(labels.size()) == n) {
      const Matrix centers = class_centers(truth.U_star.matrix(), labels);
      double spread = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        spread = std::max(spread, (truth.U_star.matrix().row(i) -
                                   centers.row(labels[static_cast<std::size_t>(i)]))
                                      .norm());
      }
      if (centers.rows() >= 2 && spread <= 1e-9) {
        const double margin = center_margin(centers);
        if (margin > 1e-12) {
          truth.labels = labels;
          truth.centers = centers;
          truth.margin = margin;
          truth.hamming_radius =
              std::min<int>(static_cast<int>(n),
                            static_cast<int>(std::ceil(16.0 * frobenius_subspace_bound(truth.radius, config.k) /
                                                       (margin * margin) - 1e-12)));
        }
      }
    }
  }
  res.hamming_radius = truth.hamming_radius;

  const double rho = spectral_radius(model.P);
  truth.beta = config.katz_beta ? *config.katz_beta : (rho > 0.0 ? 1.0 / (4.0 * rho) : 0.25);
  truth.katz_truth = katz_centrality(model.P, *truth.beta);
  truth.truth_top = unique_top(truth.katz_truth, config.selection_m);
  res.katz_beta = truth.beta;
  res.band_half_width = katz_modulus(*truth.beta) * truth.q;

  const Matrix D = distance_matrix(truth.U_star.matrix());
  const double dmax = D.maxCoeff();
  truth.t_grid = {-1e-3, 0.0, 0.1 * dmax, 0.5 * dmax, dmax};

  // Replications are independent; outcomes land in index order and are merged
  // sequentially, so the thread count cannot change the result.
  std::vector<Outcome> outcomes(static_cast<std::size_t>(replications));
  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(replications)));
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned t) {
    try {
      for (std::uint64_t i = t; i < replications; i += threads) {
        outcomes[static_cast<std::size_t>(i)] =
            run_replication(model, config, truth, replication_seed(base_seed, i));
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const double target = 1.0 - config.alpha;
  for (int c = 0; c < kNumClaims; ++c) {
    ClaimCoverage cc;
    cc.claim = kClaimNames[c];
    cc.target = target;
    for (const auto& o : outcomes) {
      if (!o.evaluated[c]) continue;
      ++cc.replications;
      cc.hits += o.hit[c] ? 1 : 0;
    }
    if (cc.replications == 0) continue;
    cc.empirical_coverage = static_cast<double>(cc.hits) / static_cast<double>(cc.replications);
    cc.binomial_sd = std::sqrt(config.alpha * (1.0 - config.alpha) / static_cast<double>(cc.replications));
    res.claims.push_back(cc);
  }
  res.audits.resize(kNumAudits);
  for (int a = 0; a < kNumAudits; ++a) res.audits[static_cast<std::size_t>(a)].name = kAuditNames[a];
  for (const auto& o : outcomes) {
    for (int a = 0; a < kNumAudits; ++a) {
      res.audits[static_cast<std::size_t>(a)].merge(o.audits[static_cast<std::size_t>(a)]);
    }
  }
  return res;
}

AuditCounter uniform_rounding_audit(std::uint64_t trials, std::uint64_t seed) {
  AuditCounter out;
  out.name = "rounding_uniform";
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int K = uniform_int(rng, 2, 5);
    const int k = uniform_int(rng, 1, 4);
    const int n = uniform_int(rng, K, 40);
    Matrix centers = gaussian_matrix(rng, K, k);
    const double delta = center_margin(centers);
    std::vector<int> truth(static_cast<std::size_t>(n));
    Matrix rows(n, k);
    for (int i = 0; i < n; ++i) {
      truth[static_cast<std::size_t>(i)] = i < K ? i : uniform_int(rng, 0, K - 1);
      Vector dir = gaussian_matrix(rng, k, 1).col(0);
      dir /= dir.norm();
      // strictly inside the Delta/4 ball
      const double len = 0.25 * delta * uniform01(rng) * (1.0 - 1e-9);
      rows.row(i) = centers.row(truth[static_cast<std::size_t>(i)]) + len * dir.transpose();
    }
    const Labels got = nearest_center_round(rows, centers);
    out.record(got == truth ? 0.0 : 1.0, 0.0, 0.0);
  }
  return out;
}

AuditCounter ridge_audit(std::uint64_t trials, std::uint64_t seed) {
  AuditCounter out;
  out.name = "ridge_risk";
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int n = uniform_int(rng, 3, 40);
    const int k = uniform_int(rng, 1, std::min(4, n - 1));
    const OrthonormalBasis U = random_basis(rng, n, k);
    OrthonormalBasis V = U;
    if (t % 2 == 0) {
      V = random_basis(rng, n, k);
    } else {
      const double scale = std::pow(10.0, uniform(rng, -4.0, 0.0));
      Eigen::HouseholderQR<Matrix> qr(U.matrix() + scale * gaussian_matrix(rng, n, k));
      V = OrthonormalBasis(qr.householderQ() * Matrix::Identity(n, k));
    }
    Vector y = gaussian_matrix(rng, n, 1).col(0);
    if (t % 3 == 0) y = U.matrix() * gaussian_matrix(rng, k, 1).col(0);  // y in col(U)
    const double lambda = std::pow(10.0, uniform(rng, -2.0, 1.0));
    const double lhs = std::abs(ridge_risk(U, y, lambda) - ridge_risk(V, y, lambda));
    out.record(lhs, ridge_risk_bound(y, lambda, grassmann_distance(U, V), n), 1e-10);
  }
  return out;
}

AuditCounter fairness_transfer_audit(std::uint64_t trials, std::uint64_t seed, int draws_per_trial) {
  AuditCounter out;
  out.name = "fairness_transfer";
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int n = uniform_int(rng, 4, 60);
    const Vector x_hat = gaussian_matrix(rng, n, 1).col(0);
    const std::vector<int> s = random_groups(rng, n);
    const double tau = uniform(rng, 0.2, 2.0);
    const double r = uniform(rng, 0.0, 0.5) * tau;
    const double eps = r / tau + uniform(rng, 0.0, 1.0) * (1.0 - r / tau) * 0.5;
    FairnessProblem problem{x_hat, Vector::Constant(n, 0.5), s, tau, eps};

    // Search a passing theta; equal thresholds usually give a small gap.
    std::optional<Thresholds> passing;
    for (int attempt = 0; attempt < 50 && !passing; ++attempt) {
      const double base = uniform(rng, -2.0, 2.0);
      const Thresholds theta{base + uniform(rng, -0.2, 0.2), base + uniform(rng, -0.2, 0.2)};
      if (feasibility_transfer_check(problem, theta, r).passes) passing = theta;
    }
    if (!passing) continue;

    // Adversarial corners first: push one group up and the other down.
    for (int dir = 0; dir < 2; ++dir) {
      Vector x_star = x_hat;
      for (int i = 0; i < n; ++i) {
        const bool up = (s[static_cast<std::size_t>(i)] == 0) == (dir == 0);
        x_star[i] += up ? r : -r;
      }
      out.record(parity_gap(logistic_decisions(x_star, s, tau, *passing), s), eps, 1e-12);
    }
    for (int d = 0; d < draws_per_trial; ++d) {
      Vector x_star = x_hat;
      for (int i = 0; i < n; ++i) x_star[i] += r * uniform(rng, -1.0, 1.0);
      out.record(parity_gap(logistic_decisions(x_star, s, tau, *passing), s), eps, 1e-12);
    }
  }
  return out;
}

AuditCounter tradeoff_audit(std::uint64_t trials, std::uint64_t seed) {
  AuditCounter out;
  out.name = "fairness_tradeoff";
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int n = uniform_int(rng, 2, 80);
    const Vector x = gaussian_matrix(rng, n, 1).col(0);
    Vector y(n);
    for (int i = 0; i < n; ++i) y[i] = t % 4 == 0 ? std::round(uniform01(rng)) : uniform01(rng);
    audit_tradeoff_once(rng, x, y, out);
  }
  return out;
}

AuditCounter filtration_audit(std::uint64_t trials, std::uint64_t seed) {
  AuditCounter dfilt, sandwich;
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int n = uniform_int(rng, 2, 30);
    const int k = uniform_int(rng, 1, 4);
    const Matrix X = gaussian_matrix(rng, n, k);
    Matrix Y = X;
    switch (t % 4) {
      case 0: break;  // identical
      case 1: Y.rowwise() += gaussian_matrix(rng, 1, k).row(0); break;  // translation
      default: Y += std::pow(10.0, uniform(rng, -3.0, 0.0)) * gaussian_matrix(rng, n, k);
    }
    const double span = distance_matrix(X).maxCoeff();
    std::vector<double> grid{-0.5};
    for (int g = 0; g < 6; ++g) grid.push_back(uniform01(rng) * span);
    audit_filtration_once(X, Y, grid, dfilt, sandwich);
  }
  AuditCounter out;
  out.name = "filtration";
  out.merge(dfilt);
  out.merge(sandwich);
  return out;
}

AuditCounter stability_perturbation_audit(const Matrix& M, double beta, int m, double q,
                                          std::uint64_t trials, std::uint64_t seed) {
  AuditCounter out;
  out.name = "stability_perturbation";
  const std::optional<NodeSet> base = unique_top(katz_centrality(M, beta), m);
  if (!base) fail(ErrorCode::InvalidArgument, "top-m set of the instance is not unique");
  const double limit = 1.0 / (2.0 * beta);
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Matrix E = symmetric_noise(rng, M.rows());
    const double norm = symmetric_operator_norm(E);
    if (norm == 0.0) continue;
    const double size = t % 2 == 0 ? q : q * uniform01(rng);
    E *= size / norm;
    const Matrix Mp = M + E;
    if (spectral_radius(Mp) > limit) continue;
    const auto top = unique_top(katz_centrality(Mp, beta), m);
    out.record(top && *top == *base ? 0.0 : 1.0, 0.0, 0.0);
  }
  return out;
}

Vector tie_counterexample(const Vector& x, int m, double eps) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  const TopSelection sel = top_m_selection(x, m, 1);
  if (sel.unique()) fail(ErrorCode::NoTiePresent, "top-m set is already unique");

  // Tied block at the m-th value.
  Vector sorted = x;
  std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
  const double level = sorted[m - 1];
  std::vector<Eigen::Index> tied;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - level) <= kTieTolerance) tied.push_back(i);
  }
  const auto s = static_cast<double>(tied.size());
  Vector out = x;
  out[tied[0]] = x[tied[0]] - eps;
  for (std::size_t l = 1; l < tied.size(); ++l) {
    out[tied[l]] = x[tied[l]] + eps * (s - static_cast<double>(l)) / (s - 1.0);
  }
  const TopSelection after = top_m_selection(out, m, 1);
  if (!after.unique() ||
      std::binary_search(after.sets.front().begin(), after.sets.front().end(),
                         static_cast<int>(tied[0]))) {
    fail(ErrorCode::InvalidArgument, "eps is below the tie resolution of the scores");
  }
  return out;
}

CollisionInstance collision_instance(int n, int k) {
  if (k < 1 || n < 2 * k + 2) {
    fail(ErrorCode::TooSmall, "collision instance needs k >= 1 and n >= 2k + 2");
  }
  const int cliques = k + 1;
  const int b = n / cliques;
  std::vector<int> labels(static_cast<std::size_t>(n), cliques);
  for (int i = 0; i < cliques * b; ++i) labels[static_cast<std::size_t>(i)] = i / b;
  const bool leftover = cliques * b < n;
  const int blocks = cliques + (leftover ? 1 : 0);
  Matrix B = Matrix::Zero(blocks, blocks);
  for (int c = 0; c < cliques; ++c) B(c, c) = 0.5;
  if (!leftover) {
    for (auto& g : labels) g = std::min(g, cliques - 1);
  }
  ProbabilityModel model = build_probability_matrix(SbmSpec::from_labels(labels, B));

  auto indicators = [&](int first) {
    Matrix U = Matrix::Zero(n, k);
    for (int c = 0; c < k; ++c) {
      for (int i = 0; i < b; ++i) U((first + c) * b + i, c) = 1.0 / std::sqrt(static_cast<double>(b));
    }
    return OrthonormalBasis(std::move(U));
  };
  return CollisionInstance{std::move(model), indicators(0), indicators(1)};
}

ProbabilityModel separated_collision_instance(int n, int k, double delta) {
  if (k < 1 || n < 2 * k + 2) {
    fail(ErrorCode::TooSmall, "collision instance needs k >= 1 and n >= 2k + 2");
  }
  if (!(delta >= 0.0) || delta * (k + 1) > 0.5) {
    fail(ErrorCode::InvalidArgument, "delta must lie in [0, 1/(2(k+1))]");
  }
  const int cliques = k + 1;
  const int b = n / cliques;
  const bool leftover = cliques * b < n;
  std::vector<int> labels(static_cast<std::size_t>(n), cliques);
  for (int i = 0; i < cliques * b; ++i) labels[static_cast<std::size_t>(i)] = i / b;
  const int blocks = cliques + (leftover ? 1 : 0);
  Matrix B = Matrix::Zero(blocks, blocks);
  for (int c = 0; c < cliques; ++c) B(c, c) = 0.5 + delta * (cliques - c);
  return build_probability_matrix(SbmSpec::from_labels(labels, B));
}

ModulusAudit modulus_audit(const CentralityFunctional& functional,
                           const std::vector<Matrix>& domain_samples, double perturbation_scale,
                           std::uint64_t trials, std::uint64_t seed) {
  if (domain_samples.empty()) fail(ErrorCode::InvalidArgument, "no domain samples");
  if (!(perturbation_scale > 0.0)) fail(ErrorCode::InvalidArgument, "perturbation scale must be positive");
  ModulusAudit out;
  out.functional = functional.tag();
  out.trials = trials;

  const bool katz = functional.kind == CentralityKind::Katz;
  std::vector<Vector> base;
  std::vector<double> gammas;
  for (const Matrix& M : domain_samples) {
    if (katz) {
      base.push_back(katz_centrality(M, functional.parameter));  // throws OutsideDomain
    } else {
      EigenvectorCentrality ec;
      try {
        ec = eigenvector_centrality(M);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateTopEigenvalue) throw;
        fail(ErrorCode::OutsideDomain, "sample has a degenerate top eigenvalue");
      }
      base.push_back(ec.scores);
      gammas.push_back(functional.parameter > 0.0 ? functional.parameter : ec.gamma);
    }
  }
  if (katz) {
    out.stated_modulus = katz_modulus(functional.parameter);
  } else {
    out.stated_modulus = 2.0 / *std::min_element(gammas.begin(), gammas.end());
  }

  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::size_t idx = static_cast<std::size_t>(t % domain_samples.size());
    const Matrix& M = domain_samples[idx];
    const Matrix E = perturbation_scale * symmetric_noise(rng, M.rows());
    const double enorm = symmetric_operator_norm(E);
    if (enorm == 0.0) {
      ++out.skipped;
      continue;
    }
    Vector c;
    try {
      c = katz ? katz_centrality(M + E, functional.parameter) : eigenvector_centrality(M + E).scores;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutsideDomain && e.code() != ErrorCode::DegenerateTopEigenvalue) throw;
      ++out.skipped;
      continue;
    }
    const Vector diff = c - base[idx];
    out.max_ratio_2 = std::max(out.max_ratio_2, diff.norm() / enorm);
    out.max_ratio_inf = std::max(out.max_ratio_inf, diff.cwiseAbs().maxCoeff() / enorm);
  }
  return out;
}

}  // namespace specgraph
