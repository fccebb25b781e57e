//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace pairtherm::cli {

/// Insertion-ordered JSON tree with deterministic serialization: doubles are
/// written with 17 significant digits (lossless round trip), non-finite
/// values as null. This is the report wire format, so bytes must not depend
/// on library version or locale.
class JsonValue {
 public:
  JsonValue() : kind_(Kind::null) {}

  static JsonValue object();
  static JsonValue array();
  static JsonValue number(double v);
  static JsonValue integer(std::int64_t v);
  static JsonValue uinteger(std::uint64_t v);
  static JsonValue boolean(bool v);
  static JsonValue string(std::string v);
  static JsonValue null();

  JsonValue& set(const std::string& key, JsonValue v);  // object insert
  JsonValue& push(JsonValue v);                         // array append

  std::string dump() const;  // pretty, 2-space indent, '\n' endings

  /// %.17g with a trailing ".0" added to integer-looking output;
  /// "null" for non-finite values.
  static std::string format_double(double v);

 private:
  enum class Kind { null, boolean, integer, uinteger, number, string, object, array };

  void write(std::string& out, int indent) const;

  Kind kind_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  std::uint64_t uint_ = 0;
  double num_ = 0.0;
  std::string str_;
  std::vector<std::pair<std::string, JsonValue>> members_;
  std::vector<JsonValue> elements_;
};

}  // namespace pairtherm::cli
