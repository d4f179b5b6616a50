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

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <string>

#include "kgenrich/error.hpp"
#include "kgenrich/graph.hpp"
#include "load_common.hpp"

namespace kgenrich {

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Cursor over one N-Triples line. Every read_* returns nullopt on a syntax error.
class LineParser {
 public:
  explicit LineParser(std::string_view line) : s_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  std::optional<std::string> read_iri() {
    if (peek() != '<') return std::nullopt;
    ++pos_;
    std::string out;
    while (!at_end() && s_[pos_] != '>') {
      char c = s_[pos_];
      if (c == ' ' || c == '"' || c == '<') return std::nullopt;
      if (c == '\\') {
        if (!read_unicode_escape(out)) return std::nullopt;
        continue;
      }
      out += c;
      ++pos_;
    }
    if (at_end() || out.empty()) return std::nullopt;
    ++pos_;
    return out;
  }

  std::optional<std::string> read_blank() {
    if (s_.substr(pos_, 2) != "_:") return std::nullopt;
    std::size_t start = pos_;
    pos_ += 2;
    while (!at_end() && s_[pos_] != ' ' && s_[pos_] != '\t' && s_[pos_] != '.') ++pos_;
    if (pos_ - start <= 2) return std::nullopt;
    return std::string(s_.substr(start, pos_ - start));
  }

  // Literal body plus either "@lang" or a datatype IRI (one of them may be set).
  struct Literal {
    std::string lexical;
    std::string language;
    std::string datatype;
  };

  std::optional<Literal> read_literal() {
    if (peek() != '"') return std::nullopt;
    ++pos_;
    Literal lit;
    for (;;) {
      if (at_end()) return std::nullopt;
      char c = s_[pos_];
      if (c == '"') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        if (pos_ + 1 >= s_.size()) return std::nullopt;
        char e = s_[pos_ + 1];
        switch (e) {
          case 't': lit.lexical += '\t'; pos_ += 2; continue;
          case 'b': lit.lexical += '\b'; pos_ += 2; continue;
          case 'n': lit.lexical += '\n'; pos_ += 2; continue;
          case 'r': lit.lexical += '\r'; pos_ += 2; continue;
          case 'f': lit.lexical += '\f'; pos_ += 2; continue;
          case '"': lit.lexical += '"'; pos_ += 2; continue;
          case '\'': lit.lexical += '\''; pos_ += 2; continue;
          case '\\': lit.lexical += '\\'; pos_ += 2; continue;
          default:
            if (!read_unicode_escape(lit.lexical)) return std::nullopt;
            continue;
        }
      }
      lit.lexical += c;
      ++pos_;
    }
    if (peek() == '@') {
      std::size_t start = ++pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
      if (pos_ == start) return std::nullopt;
      lit.language = std::string(s_.substr(start, pos_ - start));
    } else if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      auto dt = read_iri();
      if (!dt) return std::nullopt;
      lit.datatype = std::move(*dt);
    }
    return lit;
  }

  bool read_terminator() {
    skip_ws();
    if (peek() != '.') return false;
    ++pos_;
    skip_ws();
    return at_end() || peek() == '#';
  }

 private:
  bool read_unicode_escape(std::string& out) {
    // At a backslash: \uXXXX or \UXXXXXXXX.
    if (pos_ + 1 >= s_.size()) return false;
    char kind = s_[pos_ + 1];
    std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0 || pos_ + 2 + digits > s_.size()) return false;
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char h = s_[pos_ + 2 + i];
      cp <<= 4;
      if (h >= '0' && h <= '9') cp |= static_cast<std::uint32_t>(h - '0');
      else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
      else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
      else return false;
    }
    if (cp > 0x10FFFF) return false;
    append_utf8(out, cp);
    pos_ += 2 + digits;
    return true;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct Triple {
  std::string subject;
  std::string property;
  Value object;
};

std::optional<Triple> parse_line(std::string_view line, const PrefixTable& prefixes) {
  LineParser p(line);
  p.skip_ws();
  Triple t;
  if (p.peek() == '<') {
    auto iri = p.read_iri();
    if (!iri) return std::nullopt;
    t.subject = prefixes.shorten(*iri);
  } else {
    auto b = p.read_blank();
    if (!b) return std::nullopt;
    t.subject = std::move(*b);
  }
  p.skip_ws();
  auto pred = p.read_iri();
  if (!pred) return std::nullopt;
  t.property = prefixes.shorten(*pred);
  p.skip_ws();
  if (p.peek() == '<') {
    auto iri = p.read_iri();
    if (!iri) return std::nullopt;
    t.object = Value::item(prefixes.shorten(*iri));
  } else if (p.peek() == '_') {
    auto b = p.read_blank();
    if (!b) return std::nullopt;
    t.object = Value::item(std::move(*b));
  } else {
    auto lit = p.read_literal();
    if (!lit) return std::nullopt;
    if (!lit->language.empty()) {
      t.object = Value::text(std::move(lit->lexical), std::move(lit->language));
    } else {
      auto dt = lit->datatype.empty() ? std::string() : prefixes.shorten(lit->datatype);
      // Keep XSD datatypes recognisable regardless of the configured prefix token.
      if (lit->datatype.starts_with("http://www.w3.org/2001/XMLSchema#")) dt = lit->datatype;
      t.object = typed_literal(std::move(lit->lexical), dt);
    }
  }
  if (!p.read_terminator()) return std::nullopt;
  return t;
}

}  // namespace

Graph parse_ntriples(std::istream& in, std::string graph_tag, const LoadOptions& options) {
  GraphBuilder builder(graph_tag, options.label_properties);
  std::string line;
  std::string first_bad;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    ++builder.stats().data_lines;
    auto triple = parse_line(body, options.prefixes);
    if (!triple) {
      detail::note_malformed(builder.stats(), line_no, body, first_bad);
      continue;
    }
    builder.add(triple->subject, triple->property, triple->object);
  }
  detail::enforce_malformed_ratio(builder.stats(), options.max_malformed_ratio, graph_tag, first_bad);
  return std::move(builder).build();
}

Graph load_ntriples(const std::filesystem::path& path, std::string graph_tag, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return parse_ntriples(in, std::move(graph_tag), options);
}

}  // namespace kgenrich
