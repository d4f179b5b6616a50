// Copyright 2026 The kgenrich Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace kgenrich {

// Declaration order doubles as the variant index inside Value.
enum class ValueKind { ItemRef, Date, Quantity, MonolingualText, String, Other };

std::string_view to_string(ValueKind kind);
std::optional<ValueKind> parse_value_kind(std::string_view text);

enum class DatePrecision { Year, Month, Day };

struct Date {
  std::int64_t year = 0;
  int month = 0;  // 0 when precision is Year
  int day = 0;    // 0 unless precision is Day
  DatePrecision precision = DatePrecision::Year;

  static Date of_year(std::int64_t year) { return {year, 0, 0, DatePrecision::Year}; }
  static Date of_month(std::int64_t year, int month) {
    return {year, month, 0, DatePrecision::Month};
  }
  static Date of_day(std::int64_t year, int month, int day) {
    return {year, month, day, DatePrecision::Day};
  }

  // Drops components finer than `p`. Coarser precisions are left as they are.
  Date truncated(DatePrecision p) const;
  bool valid() const;

  auto operator<=>(const Date&) const = default;
};

// Magnitude is kept in its lexical form (leading '+' stripped) so that
// equality follows the source data exactly.
struct Quantity {
  std::string magnitude;
  std::string unit;

  double numeric() const;
  auto operator<=>(const Quantity&) const = default;
};

struct ItemRef {
  std::string id;
  auto operator<=>(const ItemRef&) const = default;
};

struct DateLiteral {
  Date date;
  auto operator<=>(const DateLiteral&) const = default;
};

struct MonolingualText {
  std::string text;
  std::string language;
  auto operator<=>(const MonolingualText&) const = default;
};

struct StringLiteral {
  std::string text;
  auto operator<=>(const StringLiteral&) const = default;
};

struct OtherLiteral {
  std::string lexical;
  std::string datatype;
  auto operator<=>(const OtherLiteral&) const = default;
};

// An object position value: either a node reference or a typed literal.
class Value {
 public:
  using Payload =
      std::variant<ItemRef, DateLiteral, Quantity, MonolingualText, StringLiteral, OtherLiteral>;

  Value() : payload_(ItemRef{}) {}

  static Value item(std::string id) { return Value(ItemRef{std::move(id)}); }
  static Value date(Date d) { return Value(DateLiteral{d}); }
  static Value quantity(std::string magnitude, std::string unit = {}) {
    return Value(Quantity{std::move(magnitude), std::move(unit)});
  }
  static Value text(std::string text, std::string language) {
    return Value(MonolingualText{std::move(text), std::move(language)});
  }
  static Value string(std::string text) { return Value(StringLiteral{std::move(text)}); }
  static Value other(std::string lexical, std::string datatype = {}) {
    return Value(OtherLiteral{std::move(lexical), std::move(datatype)});
  }

  ValueKind kind() const { return static_cast<ValueKind>(payload_.index()); }
  bool is_item() const { return kind() == ValueKind::ItemRef; }

  // Node id of an ItemRef. Throws std::bad_variant_access for literals.
  const std::string& id() const { return std::get<ItemRef>(payload_).id; }
  const Date* as_date() const;
  const Quantity* as_quantity() const;

  // Human-readable lexical form: node id, literal text or date in ISO shape.
  std::string lexical() const;

  const Payload& payload() const { return payload_; }

  auto operator<=>(const Value&) const = default;
  bool operator==(const Value&) const = default;

 private:
  explicit Value(Payload p) : payload_(std::move(p)) {}
  Payload payload_;
};

// Whether `token` has the shape of a node identifier in edge-TSV form.
bool looks_like_node_id(std::string_view token);

// Canonical single-field encoding used by edge-TSV and as the interning key.
// decode_value(encode_value(v)) == v for every value whose item ids satisfy
// looks_like_node_id.
std::string encode_value(const Value& v);

// Parses an edge-TSV `node2` field. Returns nullopt for malformed quoting.
// Datatype inference follows lexical shape: quoted -> String, 'x'@lang ->
// MonolingualText, ISO date -> Date, number -> Quantity, id-shaped -> ItemRef.
std::optional<Value> decode_value(std::string_view field);

// Parses ISO-like date text ("1885", "1885-03", "1885-03-04", with optional
// time suffix). Year-only text is accepted here, unlike decode_value.
std::optional<Date> parse_iso_date(std::string_view text);
std::string format_date(const Date& d);

// Whether text is a finite decimal number (optional sign, fraction, exponent).
bool is_finite_number(std::string_view text);

// Builds a literal from a lexical form and an explicit datatype (full XSD IRI
// or `xsd:` CURIE). Unparseable dates and numbers fall back to Other; numeric
// lexical forms under a non-XSD datatype become a Quantity with that unit.
Value typed_literal(std::string lexical, std::string_view datatype);

}  // namespace kgenrich

template <>
struct std::hash<kgenrich::Value> {
  std::size_t operator()(const kgenrich::Value& v) const noexcept {
    return std::hash<std::string>{}(kgenrich::encode_value(v));
  }
};
