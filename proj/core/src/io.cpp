#include "specgraph/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json_util.hpp"

namespace specgraph {

namespace detail {

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, what + ": " + e.what());
  }
}

double get_real(const json& j, const std::string& where) {
  if (!j.is_number()) fail(ErrorCode::ParseError, where + ": expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(ErrorCode::ParseError, where + ": expected an integer");
  return j.get<int>();
}

Vector get_vector(const json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorCode::ParseError, where + ": expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = get_real(j[i], where);
  return v;
}

Matrix get_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::ParseError, where + ": expected an array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix M(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      fail(ErrorCode::ParseError, where + ": rows must be arrays of equal length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = get_real(j[i][c], where);
    }
  }
  return M;
}

std::vector<int> get_int_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorCode::ParseError, where + ": expected an array of integers");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(get_int(e, where));
  return out;
}

std::vector<double> get_real_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorCode::ParseError, where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(get_real(e, where));
  return out;
}

const json* optional_key(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

const json& required_key(const json& obj, const std::string& key, const std::string& where) {
  const json* v = optional_key(obj, key);
  if (v == nullptr) fail(ErrorCode::ParseError, where + ": missing required key \"" + key + "\"");
  return *v;
}

}  // namespace detail

using detail::json;

AdjacencyMatrix read_edge_list(std::istream& in, std::optional<Eigen::Index> n) {
  std::vector<std::pair<int, int>> edges;
  std::optional<Eigen::Index> header_n;
  std::string line;
  int line_no = 0;
  int max_id = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      long long declared = 0;
      if (std::sscanf(line.c_str(), "# nodes %lld", &declared) == 1) header_n = declared;
      continue;
    }
    std::istringstream fields(line);
    long long u = 0, v = 0;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest)) {
      fail(ErrorCode::ParseError, "edge list line " + std::to_string(line_no) +
                                      ": expected two integer node ids");
    }
    if (u < 0 || v < 0 || u > 1'000'000'000 || v > 1'000'000'000) {
      fail(ErrorCode::ParseError, "edge list line " + std::to_string(line_no) +
                                      ": node id out of range");
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_id = std::max({max_id, static_cast<int>(u), static_cast<int>(v)});
  }
  const Eigen::Index nodes = n ? *n : header_n ? *header_n : max_id + 1;
  return AdjacencyMatrix::from_edges(nodes, edges);
}

AdjacencyMatrix load_edge_list(const std::string& path, std::optional<Eigen::Index> n) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open edge list " + path);
  return read_edge_list(in, n);
}

void write_edge_list(std::ostream& out, const AdjacencyMatrix& A) {
  out << "# nodes " << A.n() << '\n';
  for (Eigen::Index i = 0; i < A.n(); ++i) {
    for (Eigen::Index j = i + 1; j < A.n(); ++j) {
      if (A.A(i, j) != 0.0) out << i << '\t' << j << '\n';
    }
  }
}

Matrix read_dense_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "CSV row " + std::to_string(rows.size() + 1) +
                                        ": cannot parse \"" + cell + "\"");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(ErrorCode::ParseError, "CSV rows have different lengths");
    }
    rows.push_back(std::move(row));
  }
  Matrix M(static_cast<Eigen::Index>(rows.size()),
           rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return M;
}

void write_dense_csv(std::ostream& out, const Matrix& M) {
  char buf[40];
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j > 0) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", M(i, j));
      out << buf;
    }
    out << '\n';
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ModelDocument parse_model_document(const std::string& json_text) {
  using namespace detail;
  const json doc = parse_json(json_text, "model");
  if (!doc.is_object()) fail(ErrorCode::ParseError, "model: expected a JSON object");
  const json& type_j = required_key(doc, "type", "model");
  if (!type_j.is_string()) fail(ErrorCode::ParseError, "model: \"type\" must be a string");
  const std::string type = type_j.get<std::string>();

  ModelDocument out;
  if (type == "sbm") {
    if (const json* eq = optional_key(doc, "equal_blocks")) {
      out.spec = SbmSpec::equal_blocks(get_int(required_key(*eq, "n", "equal_blocks"), "n"),
                                       get_int(required_key(*eq, "blocks", "equal_blocks"), "blocks"),
                                       get_real(required_key(*eq, "p", "equal_blocks"), "p"),
                                       get_real(required_key(*eq, "q", "equal_blocks"), "q"));
    } else {
      const Matrix B = get_matrix(required_key(doc, "B", "sbm"), "B");
      if (const json* labels = optional_key(doc, "labels")) {
        out.spec = SbmSpec::from_labels(get_int_list(*labels, "labels"), B);
      } else if (const json* sizes = optional_key(doc, "block_sizes")) {
        out.spec = SbmSpec::from_block_sizes(get_int_list(*sizes, "block_sizes"), B);
      } else if (const json* Z = optional_key(doc, "Z")) {
        out.spec = SbmSpec{get_matrix(*Z, "Z"), B};
      } else {
        fail(ErrorCode::ParseError, "sbm: one of \"labels\", \"block_sizes\", \"Z\" is required");
      }
    }
  } else if (type == "dcsbm") {
    out.spec = DcsbmSpec{get_vector(required_key(doc, "theta", "dcsbm"), "theta"),
                         get_int_list(required_key(doc, "labels", "dcsbm"), "labels"),
                         get_matrix(required_key(doc, "B", "dcsbm"), "B")};
  } else if (type == "rdpg") {
    RdpgSpec spec;
    spec.positions = get_matrix(required_key(doc, "X", "rdpg"), "X");
    spec.positive = static_cast<int>(spec.positions.cols());
    if (const json* sig = optional_key(doc, "signature")) {
      const auto pq = get_int_list(*sig, "signature");
      if (pq.size() != 2) fail(ErrorCode::ParseError, "signature must be [p, q]");
      spec.positive = pq[0];
      spec.negative = pq[1];
    }
    out.spec = spec;
  } else {
    fail(ErrorCode::ParseError, "model: unknown type \"" + type + "\"");
  }

  if (const json* env = optional_key(doc, "envelope")) {
    if (const json* d = optional_key(*env, "d_max")) out.envelope.d_max = get_real(*d, "d_max");
    if (const json* g = optional_key(*env, "gap_lower")) {
      out.envelope.gap_lower = get_real(*g, "gap_lower");
    }
  }
  return out;
}

ModelDocument load_model_document(const std::string& path) {
  return parse_model_document(read_text_file(path));
}

}  // namespace specgraph
