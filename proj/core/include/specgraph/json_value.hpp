#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph::json {

/// Minimal ordered JSON document used for reports. Reals are written with 17
/// significant digits; non-finite reals become null. Object keys keep their
/// insertion order, so equal inputs always serialize to identical bytes.
class Value {
 public:
  using Array = std::vector<Value>;
  using Object = std::vector<std::pair<std::string, Value>>;

  Value() = default;
  Value(std::nullptr_t) {}
  Value(bool b) : data_(b) {}
  Value(int v) : data_(static_cast<std::int64_t>(v)) {}
  Value(long v) : data_(static_cast<std::int64_t>(v)) {}
  Value(long long v) : data_(static_cast<std::int64_t>(v)) {}
  Value(unsigned v) : data_(static_cast<std::uint64_t>(v)) {}
  Value(unsigned long v) : data_(static_cast<std::uint64_t>(v)) {}
  Value(unsigned long long v) : data_(static_cast<std::uint64_t>(v)) {}
  Value(double v) : data_(v) {}
  Value(const char* s) : data_(std::string(s)) {}
  Value(std::string s) : data_(std::move(s)) {}
  Value(Array a) : data_(std::move(a)) {}
  Value(Object o) : data_(std::move(o)) {}

  static Value array() { return Value(Array{}); }
  static Value object() { return Value(Object{}); }

  /// Adds or replaces a key (object values only).
  Value& set(const std::string& key, Value v);
  /// Appends (array values only).
  Value& push(Value v);

  bool is_null() const { return std::holds_alternative<std::monostate>(data_); }
  const Value* find(const std::string& key) const;

  /// indent < 0 writes a single line.
  std::string dump(int indent = 2) const;

 private:
  void write(std::string& out, int indent, int depth) const;

  std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string, Array,
               Object>
      data_;
};

std::string format_real(double v);

Value from(const Vector& v);
Value from(const Matrix& m);  // array of rows
Value from(const std::vector<int>& v);
Value from(const std::vector<double>& v);

}  // namespace specgraph::json
