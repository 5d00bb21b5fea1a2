#include "specgraph/selection.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "specgraph/error.hpp"

namespace specgraph {

namespace {

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // acc = C(n - r + i - 1, i - 1); the next product is divisible by i.
    const std::uint64_t factor = n - r + i;
    if (acc > kMax / factor) return kMax;
    acc = acc * factor / i;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

TopSelection top_m_selection(const Vector& x, int m, std::size_t max_sets) {
  const auto n = static_cast<int>(x.size());
  if (m < 1 || m > n - 1) {
    fail(ErrorCode::InvalidArgument, "m = " + std::to_string(m) + " outside [1, " +
                                         std::to_string(n - 1) + "]");
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x[a] > x[b]; });
  const double threshold = x[order[static_cast<std::size_t>(m - 1)]];

  NodeSet strict, tied;
  for (int i = 0; i < n; ++i) {
    if (x[i] > threshold + kTieTolerance) {
      strict.push_back(i);
    } else if (x[i] >= threshold - kTieTolerance) {
      tied.push_back(i);
    }
  }
  const int need = m - static_cast<int>(strict.size());

  TopSelection out;
  out.admissible_count = binomial_saturating(tied.size(), static_cast<std::uint64_t>(need));

  // Enumerate combinations of `need` tied indices in lexicographic order.
  std::vector<int> pick(static_cast<std::size_t>(need));
  std::iota(pick.begin(), pick.end(), 0);
  const int t = static_cast<int>(tied.size());
  while (out.sets.size() < max_sets) {
    NodeSet s = strict;
    for (int p : pick) s.push_back(tied[static_cast<std::size_t>(p)]);
    std::sort(s.begin(), s.end());
    out.sets.push_back(std::move(s));
    int i = need - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == t - need + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < need; ++j) pick[static_cast<std::size_t>(j)] = pick[j - 1] + 1;
  }

  if (out.unique()) {
    out.margin = threshold - x[order[static_cast<std::size_t>(m)]];
  }
  return out;
}

StabilityCertificate stability_certificate(const Vector& x_hat, int m, double modulus, double q) {
  if (!(modulus >= 0.0) || !(q >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "modulus and deviation bound must be nonnegative");
  }
  const TopSelection sel = top_m_selection(x_hat, m, 1);
  StabilityCertificate out;
  out.m = m;
  out.threshold = 2.0 * modulus * q;
  if (sel.unique()) {
    out.observed_margin = sel.margin;
    out.selected_set = sel.sets.front();
    out.certified = *sel.margin > out.threshold;
  }
  return out;
}

}  // namespace specgraph
