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

#include "kgenrich/value.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

namespace kgenrich {

namespace {

constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
constexpr std::string_view kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Strips the XSD namespace or `xsd:` prefix; empty when neither applies.
std::string_view xsd_local(std::string_view datatype) {
  if (datatype.starts_with(kXsd)) return datatype.substr(kXsd.size());
  if (datatype.starts_with("xsd:")) return datatype.substr(4);
  return {};
}

bool is_xsd_numeric(std::string_view local) {
  static constexpr std::string_view kNumeric[] = {
      "integer",         "decimal",         "double",           "float",
      "int",             "long",            "short",            "byte",
      "nonNegativeInteger", "positiveInteger", "negativeInteger", "nonPositiveInteger",
      "unsignedInt",     "unsignedLong",    "unsignedShort",    "unsignedByte"};
  for (auto n : kNumeric)
    if (local == n) return true;
  return false;
}

void append_escaped(std::string& out, std::string_view text, char quote) {
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c == quote) out += '\\';
        out += c;
    }
  }
}

// Reads a quoted run starting at text[0] (the quote char). On success returns
// the unescaped body and sets `consumed` to the index just past the closing quote.
std::optional<std::string> read_quoted(std::string_view text, std::size_t& consumed) {
  const char quote = text[0];
  std::string body;
  for (std::size_t i = 1; i < text.size(); ++i) {
    char c = text[i];
    if (c == quote) {
      consumed = i + 1;
      return body;
    }
    if (c == '\\') {
      if (++i >= text.size()) return std::nullopt;
      switch (text[i]) {
        case 't': body += '\t'; break;
        case 'n': body += '\n'; break;
        case 'r': body += '\r'; break;
        default: body += text[i];
      }
      continue;
    }
    body += c;
  }
  return std::nullopt;
}

// Length of the longest numeric prefix of `text`, 0 if none.
std::size_t numeric_prefix(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  std::size_t int_digits = 0;
  while (i < text.size() && is_digit(text[i])) ++i, ++int_digits;
  std::size_t frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    std::size_t j = i + 1;
    while (j < text.size() && is_digit(text[j])) ++j, ++frac_digits;
    if (int_digits + frac_digits > 0) i = j;
  }
  if (int_digits + frac_digits == 0) return 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
    std::size_t exp_digits = 0;
    while (j < text.size() && is_digit(text[j])) ++j, ++exp_digits;
    if (exp_digits > 0) i = j;
  }
  return i;
}

std::string normalize_magnitude(std::string_view text) {
  if (!text.empty() && text[0] == '+') text.remove_prefix(1);
  return std::string(text);
}

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

// KGTK-style date: ^YYYY-MM-DDThh:mm:ssZ/precision.
std::optional<Date> parse_caret_date(std::string_view text) {
  std::optional<int> code;
  if (auto slash = text.rfind('/'); slash != std::string_view::npos) {
    int c = 0;
    if (!parse_int(text.substr(slash + 1), c)) return std::nullopt;
    code = c;
    text = text.substr(0, slash);
  }
  auto date = parse_iso_date(text);
  if (!date || !code) return date;
  // Precision codes follow the Wikidata scale: 9 year, 10 month, 11 day.
  DatePrecision p = *code <= 9 ? DatePrecision::Year
                    : *code == 10 ? DatePrecision::Month
                                  : DatePrecision::Day;
  if (p > date->precision) return std::nullopt;
  return date->truncated(p);
}

}  // namespace

std::string_view to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::ItemRef: return "item";
    case ValueKind::Date: return "date";
    case ValueKind::Quantity: return "quantity";
    case ValueKind::MonolingualText: return "monolingualtext";
    case ValueKind::String: return "string";
    case ValueKind::Other: return "other";
  }
  return "other";
}

std::optional<ValueKind> parse_value_kind(std::string_view text) {
  for (auto k : {ValueKind::ItemRef, ValueKind::Date, ValueKind::Quantity,
                 ValueKind::MonolingualText, ValueKind::String, ValueKind::Other}) {
    if (to_string(k) == text) return k;
  }
  if (text == "itemref" || text == "wikibase-item") return ValueKind::ItemRef;
  if (text == "time") return ValueKind::Date;
  return std::nullopt;
}

Date Date::truncated(DatePrecision p) const {
  Date out = *this;
  if (p >= precision) return out;
  out.precision = p;
  if (p < DatePrecision::Day) out.day = 0;
  if (p < DatePrecision::Month) out.month = 0;
  return out;
}

bool Date::valid() const {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  switch (precision) {
    case DatePrecision::Year: return month == 0 && day == 0;
    case DatePrecision::Month: return month >= 1 && month <= 12 && day == 0;
    case DatePrecision::Day: {
      if (month < 1 || month > 12 || day < 1) return false;
      const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
      return day <= kDays[month - 1] + (month == 2 && leap ? 1 : 0);
    }
  }
  return false;
}

double Quantity::numeric() const { return std::strtod(magnitude.c_str(), nullptr); }

const Date* Value::as_date() const {
  auto* d = std::get_if<DateLiteral>(&payload_);
  return d ? &d->date : nullptr;
}

const Quantity* Value::as_quantity() const { return std::get_if<Quantity>(&payload_); }

std::string Value::lexical() const {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ItemRef>) return p.id;
        else if constexpr (std::is_same_v<T, DateLiteral>) return format_date(p.date);
        else if constexpr (std::is_same_v<T, Quantity>)
          return p.unit.empty() ? p.magnitude : p.magnitude + " " + p.unit;
        else if constexpr (std::is_same_v<T, OtherLiteral>) return p.lexical;
        else return p.text;
      },
      payload_);
}

bool looks_like_node_id(std::string_view token) {
  if (token.empty()) return false;
  auto first = static_cast<unsigned char>(token[0]);
  if (!(std::isalpha(first) || first == '_' || first >= 0x80)) return false;
  for (char c : token) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '"' || c == 0x7f) return false;
  }
  return true;
}

bool is_finite_number(std::string_view text) {
  if (text.empty() || numeric_prefix(text) != text.size()) return false;
  return std::isfinite(std::strtod(std::string(text).c_str(), nullptr));
}

std::optional<Date> parse_iso_date(std::string_view text) {
  if (auto t = text.find('T'); t != std::string_view::npos) text = text.substr(0, t);
  bool negative = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  auto dash = text.find('-');
  std::int64_t year = 0;
  if (!parse_int(text.substr(0, dash), year)) return std::nullopt;
  if (negative) year = -year;
  if (dash == std::string_view::npos) return Date::of_year(year);

  auto rest = text.substr(dash + 1);
  auto dash2 = rest.find('-');
  int month = 0;
  if (rest.substr(0, dash2).size() != 2 || !parse_int(rest.substr(0, dash2), month))
    return std::nullopt;
  int day = 0;
  if (dash2 != std::string_view::npos) {
    auto d = rest.substr(dash2 + 1);
    if (d.size() != 2 || !parse_int(d, day)) return std::nullopt;
  }
  // Zeroed components (Wikidata style "1885-00-00") mean coarser precision.
  if (month == 0) {
    if (day != 0) return std::nullopt;
    return Date::of_year(year);
  }
  if (month > 12 || day > 31) return std::nullopt;
  if (day == 0) return Date::of_month(year, month);
  return Date::of_day(year, month, day);
}

std::string format_date(const Date& d) {
  std::string out = d.year < 0 ? fmt::format("-{:04}", -d.year) : fmt::format("{:04}", d.year);
  if (d.precision >= DatePrecision::Month) out += fmt::format("-{:02}", d.month);
  if (d.precision >= DatePrecision::Day) out += fmt::format("-{:02}", d.day);
  return out;
}

Value typed_literal(std::string lexical, std::string_view datatype) {
  if (datatype.empty() || datatype == kRdfLangString) return Value::string(std::move(lexical));
  auto local = xsd_local(datatype);
  if (local == "string") return Value::string(std::move(lexical));
  if (local == "date" || local == "dateTime" || local == "gYear" || local == "gYearMonth") {
    if (auto d = parse_iso_date(lexical)) return Value::date(*d);
    return Value::other(std::move(lexical), std::string(datatype));
  }
  if (!local.empty()) {
    if (is_xsd_numeric(local) && is_finite_number(lexical))
      return Value::quantity(normalize_magnitude(lexical));
    return Value::other(std::move(lexical), std::string(datatype));
  }
  // Custom datatypes such as dbt:usDollar carry the unit of a numeric value.
  if (is_finite_number(lexical)) return Value::quantity(normalize_magnitude(lexical), std::string(datatype));
  return Value::other(std::move(lexical), std::string(datatype));
}

std::string encode_value(const Value& v) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        std::string out;
        if constexpr (std::is_same_v<T, ItemRef>) {
          out = p.id;
        } else if constexpr (std::is_same_v<T, DateLiteral>) {
          const Date& d = p.date;
          int code = d.precision == DatePrecision::Year ? 9 : d.precision == DatePrecision::Month ? 10 : 11;
          out = '^' + (d.year < 0 ? fmt::format("-{:04}", -d.year) : fmt::format("{:04}", d.year));
          out += fmt::format("-{:02}-{:02}T00:00:00Z/{}", d.month ? d.month : 1, d.day ? d.day : 1, code);
        } else if constexpr (std::is_same_v<T, Quantity>) {
          out = p.magnitude + p.unit;
        } else if constexpr (std::is_same_v<T, MonolingualText>) {
          out = '\'';
          append_escaped(out, p.text, '\'');
          out += "'@" + p.language;
        } else if constexpr (std::is_same_v<T, StringLiteral>) {
          out = '"';
          append_escaped(out, p.text, '"');
          out += '"';
        } else {
          out = '"';
          append_escaped(out, p.lexical, '"');
          out += "\"^^" + p.datatype;
        }
        return out;
      },
      v.payload());
}

std::optional<Value> decode_value(std::string_view field) {
  if (field.empty()) return std::nullopt;
  const char first = field[0];
  if (first == '"' || first == '\'') {
    std::size_t consumed = 0;
    auto body = read_quoted(field, consumed);
    if (!body) return std::nullopt;
    auto rest = field.substr(consumed);
    if (rest.empty()) {
      if (first == '\'') return std::nullopt;  // text needs a language tag
      return Value::string(std::move(*body));
    }
    if (rest[0] == '@' && rest.size() > 1) return Value::text(std::move(*body), std::string(rest.substr(1)));
    if (first == '"' && rest.starts_with("^^")) {
      auto dt = rest.substr(2);
      if (dt.empty()) return Value::other(std::move(*body));
      if (dt.front() == '<' && dt.back() == '>') dt = dt.substr(1, dt.size() - 2);
      return typed_literal(std::move(*body), dt);
    }
    return std::nullopt;
  }
  if (first == '^') {
    if (auto d = parse_caret_date(field.substr(1))) return Value::date(*d);
    return std::nullopt;
  }
  if (first == '<') {
    if (field.size() < 3 || field.back() != '>') return std::nullopt;
    return Value::item(std::string(field.substr(1, field.size() - 2)));
  }
  // ISO dates need at least a month component; a bare year reads as a number.
  if (field.find('-', 1) != std::string_view::npos && is_digit(field[field[0] == '-' ? 1 : 0])) {
    if (auto d = parse_iso_date(field); d && d->precision != DatePrecision::Year)
      return Value::date(*d);
  }
  if (auto n = numeric_prefix(field); n > 0) {
    auto unit = field.substr(n);
    if (unit.empty() || looks_like_node_id(unit)) {
      auto magnitude = field.substr(0, n);
      if (is_finite_number(magnitude))
        return Value::quantity(normalize_magnitude(magnitude), std::string(unit));
    }
  }
  if (looks_like_node_id(field)) return Value::item(std::string(field));
  return Value::other(std::string(field));
}

}  // namespace kgenrich
