#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

using NodeSet = std::vector<int>;  // sorted ascending

/// Scores within this absolute distance of the m-th largest count as tied.
constexpr double kTieTolerance = 1e-12;

struct TopSelection {
  std::vector<NodeSet> sets;          // admissible top-m sets (enumeration capped)
  std::uint64_t admissible_count = 0; // saturates at UINT64_MAX
  std::optional<double> margin;       // x_(m) - x_(m+1), only when unique

  bool unique() const { return admissible_count == 1; }
};

/// Admissible top-m sets {S : |S| = m, min_S x >= max_{not S} x}. At most
/// `max_sets` are materialized; `admissible_count` is always exact.
TopSelection top_m_selection(const Vector& x, int m, std::size_t max_sets = 4096);

struct StabilityCertificate {
  int m = 0;
  std::optional<double> observed_margin;
  double threshold = 0.0;  // 2 L q
  bool certified = false;
  std::optional<NodeSet> selected_set;
};

/// Certified iff the top-m set of x_hat is unique and its margin exceeds 2 L q.
StabilityCertificate stability_certificate(const Vector& x_hat, int m, double modulus, double q);

}  // namespace specgraph
