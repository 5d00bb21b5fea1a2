#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "specgraph/graph.hpp"

namespace specgraph {

/// Reads a tab-separated undirected edge list ("u\tv" per line, 0-based ids,
/// each pair once). Blank lines and lines starting with '#' are skipped,
/// except a leading "# nodes <n>" header which fixes n (isolated trailing
/// nodes would otherwise be lost). Without header or `n`, n = max id + 1.
AdjacencyMatrix read_edge_list(std::istream& in, std::optional<Eigen::Index> n = std::nullopt);
AdjacencyMatrix load_edge_list(const std::string& path,
                               std::optional<Eigen::Index> n = std::nullopt);

/// Writes the "# nodes <n>" header followed by every edge u < v.
void write_edge_list(std::ostream& out, const AdjacencyMatrix& A);

/// Dense CSV: one row per line, comma-separated decimals.
Matrix read_dense_csv(std::istream& in);
void write_dense_csv(std::ostream& out, const Matrix& M);

std::string read_text_file(const std::string& path);

/// A parsed model file: the model plus an optional declared envelope.
struct ModelDocument {
  ModelSpec spec;
  Envelope envelope;
};

/// Parses the model JSON schema documented in the README:
///   {"type": "sbm", "B": [[..]], one of "labels" | "block_sizes" | "Z"}
///   {"type": "sbm", "equal_blocks": {"n", "blocks", "p", "q"}}
///   {"type": "dcsbm", "labels": [..], "theta": [..], "B": [[..]]}
///   {"type": "rdpg", "X": [[..]], "signature": [p, q]}
/// each optionally with "envelope": {"d_max": .., "gap_lower": ..}.
ModelDocument parse_model_document(const std::string& json_text);
ModelDocument load_model_document(const std::string& path);

}  // namespace specgraph
