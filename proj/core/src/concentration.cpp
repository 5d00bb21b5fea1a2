#include "specgraph/concentration.hpp"

#include <cmath>
#include <sstream>

#include "specgraph/error.hpp"

namespace specgraph {

VarianceProxy variance_proxy(const Matrix& P) {
  VarianceProxy out;
  const auto n = P.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      row += P(i, j) * (1.0 - P(i, j));
      if (j > i) out.p_max = std::max(out.p_max, P(i, j));
    }
    out.v = std::max(out.v, row);
  }
  return out;
}

double bernstein_tail(double t, double v_bound, Eigen::Index n) {
  if (t <= 0.0) return 2.0 * static_cast<double>(n);
  return 2.0 * static_cast<double>(n) * std::exp(-(0.5 * t * t) / (v_bound + t / 3.0));
}

DeviationQuantile deviation_quantile(double v_bound, Eigen::Index n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << "alpha = " << alpha << " is outside (0,1)";
    fail(ErrorCode::BadLevel, os.str());
  }
  if (!(v_bound >= 0.0) || !std::isfinite(v_bound)) {
    fail(ErrorCode::InvalidArgument, "variance bound must be finite and nonnegative");
  }
  if (n < 2) fail(ErrorCode::InvalidArgument, "dimension must be at least 2");
  const double L = std::log(2.0 * static_cast<double>(n) / alpha);
  const double t = L / 3.0 + std::sqrt(L * L / 9.0 + 2.0 * v_bound * L);
  return DeviationQuantile{t, alpha, v_bound, n, "bernstein_explicit"};
}

DavisKahanRadius davis_kahan_radius(double q, double gap) {
  if (!(gap > 0.0)) {
    std::ostringstream os;
    os << "gap certificate " << gap << " is not positive";
    fail(ErrorCode::NonpositiveGap, os.str());
  }
  if (!(q >= 0.0)) fail(ErrorCode::InvalidArgument, "deviation bound must be nonnegative");
  const double r = 2.0 * q / gap;
  return DavisKahanRadius{r, r < 1.0};
}

}  // namespace specgraph
