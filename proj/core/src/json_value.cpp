#include "specgraph/json_value.hpp"

#include <cmath>
#include <cstdio>

#include "specgraph/error.hpp"

namespace specgraph::json {

namespace {

void write_string(std::string& out, const std::string& s) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

}  // namespace

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Value& Value::set(const std::string& key, Value v) {
  auto* obj = std::get_if<Object>(&data_);
  if (obj == nullptr) fail(ErrorCode::InvalidArgument, "set() on a non-object JSON value");
  for (auto& [k, existing] : *obj) {
    if (k == key) {
      existing = std::move(v);
      return *this;
    }
  }
  obj->emplace_back(key, std::move(v));
  return *this;
}

Value& Value::push(Value v) {
  auto* arr = std::get_if<Array>(&data_);
  if (arr == nullptr) fail(ErrorCode::InvalidArgument, "push() on a non-array JSON value");
  arr->push_back(std::move(v));
  return *this;
}

const Value* Value::find(const std::string& key) const {
  const auto* obj = std::get_if<Object>(&data_);
  if (obj == nullptr) return nullptr;
  for (const auto& [k, v] : *obj) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string Value::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  if (indent >= 0) out += '\n';
  return out;
}

void Value::write(std::string& out, int indent, int depth) const {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          out += "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          out += x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t> || std::is_same_v<T, std::uint64_t>) {
          out += std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          out += format_real(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          write_string(out, x);
        } else if constexpr (std::is_same_v<T, Array>) {
          if (x.empty()) {
            out += "[]";
            return;
          }
          // Arrays of scalars stay on one line to keep matrices readable.
          bool flat = true;
          for (const auto& e : x) {
            if (std::holds_alternative<Array>(e.data_) || std::holds_alternative<Object>(e.data_)) {
              flat = false;
            }
          }
          out += '[';
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i > 0) out += flat && indent >= 0 ? ", " : ",";
            if (!flat) newline(out, indent, depth + 1);
            x[i].write(out, indent, depth + 1);
          }
          if (!flat) newline(out, indent, depth);
          out += ']';
        } else {
          if (x.empty()) {
            out += "{}";
            return;
          }
          out += '{';
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i > 0) out += ',';
            newline(out, indent, depth + 1);
            write_string(out, x[i].first);
            out += indent >= 0 ? ": " : ":";
            x[i].second.write(out, indent, depth + 1);
          }
          newline(out, indent, depth);
          out += '}';
        }
      },
      data_);
}

Value from(const Vector& v) {
  Value::Array a;
  a.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) a.emplace_back(v[i]);
  return Value(std::move(a));
}

Value from(const Matrix& m) {
  Value::Array rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(from(Vector(m.row(i).transpose())));
  return Value(std::move(rows));
}

Value from(const std::vector<int>& v) {
  Value::Array a(v.begin(), v.end());
  return Value(std::move(a));
}

Value from(const std::vector<double>& v) {
  Value::Array a(v.begin(), v.end());
  return Value(std::move(a));
}

}  // namespace specgraph::json
