//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace pairtherm::cli {

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Kind::object;
  return v;
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Kind::array;
  return v;
}

JsonValue JsonValue::number(double x) {
  JsonValue v;
  v.kind_ = Kind::number;
  v.num_ = x;
  return v;
}

JsonValue JsonValue::integer(std::int64_t x) {
  JsonValue v;
  v.kind_ = Kind::integer;
  v.int_ = x;
  return v;
}

JsonValue JsonValue::uinteger(std::uint64_t x) {
  JsonValue v;
  v.kind_ = Kind::uinteger;
  v.uint_ = x;
  return v;
}

JsonValue JsonValue::boolean(bool x) {
  JsonValue v;
  v.kind_ = Kind::boolean;
  v.bool_ = x;
  return v;
}

JsonValue JsonValue::string(std::string x) {
  JsonValue v;
  v.kind_ = Kind::string;
  v.str_ = std::move(x);
  return v;
}

JsonValue JsonValue::null() { return JsonValue(); }

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
  members_.emplace_back(key, std::move(v));
  return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
  elements_.push_back(std::move(v));
  return *this;
}

std::string JsonValue::format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void write_indent(std::string& out, int indent) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
}

}  // namespace

void JsonValue::write(std::string& out, int indent) const {
  char buf[32];
  switch (kind_) {
    case Kind::null:
      out += "null";
      break;
    case Kind::boolean:
      out += bool_ ? "true" : "false";
      break;
    case Kind::integer:
      std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(int_));
      out += buf;
      break;
    case Kind::uinteger:
      std::snprintf(buf, sizeof buf, "%llu",
                    static_cast<unsigned long long>(uint_));
      out += buf;
      break;
    case Kind::number:
      out += format_double(num_);
      break;
    case Kind::string:
      write_escaped(out, str_);
      break;
    case Kind::object: {
      if (members_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t i = 0; i < members_.size(); ++i) {
        write_indent(out, indent + 1);
        write_escaped(out, members_[i].first);
        out += ": ";
        members_[i].second.write(out, indent + 1);
        if (i + 1 < members_.size()) out += ',';
        out += '\n';
      }
      write_indent(out, indent);
      out += '}';
      break;
    }
    case Kind::array: {
      if (elements_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < elements_.size(); ++i) {
        write_indent(out, indent + 1);
        elements_[i].write(out, indent + 1);
        if (i + 1 < elements_.size()) out += ',';
        out += '\n';
      }
      write_indent(out, indent);
      out += ']';
      break;
    }
  }
}

std::string JsonValue::dump() const {
  std::string out;
  write(out, 0);
  out += '\n';
  return out;
}

}  // namespace pairtherm::cli
