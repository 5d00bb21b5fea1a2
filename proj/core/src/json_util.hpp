#pragma once

// Internal helpers for reading nlohmann::json documents into library types.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "specgraph/error.hpp"
#include "specgraph/graph.hpp"

namespace specgraph::detail {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& what);

double get_real(const json& j, const std::string& where);
int get_int(const json& j, const std::string& where);
Vector get_vector(const json& j, const std::string& where);
Matrix get_matrix(const json& j, const std::string& where);
std::vector<int> get_int_list(const json& j, const std::string& where);
std::vector<double> get_real_list(const json& j, const std::string& where);

/// Value of an optional key, or nullptr when the key is absent or null.
const json* optional_key(const json& obj, const std::string& key);
const json& required_key(const json& obj, const std::string& key, const std::string& where);

}  // namespace specgraph::detail
