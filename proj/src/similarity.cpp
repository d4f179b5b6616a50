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

#include "kgenrich/similarity.hpp"

#include <cctype>
#include <vector>

namespace kgenrich {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower_or_digit(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

struct Block {
  std::size_t a_lo, a_hi, b_lo, b_hi;
};

}  // namespace

std::string normalize_label(std::string_view raw) {
  if (raw.find("://") != std::string_view::npos) {
    if (auto cut = raw.find_last_of("/#"); cut != std::string_view::npos) raw.remove_prefix(cut + 1);
  }
  if (auto cut = raw.rfind(':'); cut != std::string_view::npos) raw.remove_prefix(cut + 1);

  std::string spaced;
  spaced.reserve(raw.size() + 8);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (c == '_' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      spaced += ' ';
      continue;
    }
    if (is_upper(c) && i > 0) {
      char prev = raw[i - 1];
      bool next_lower = i + 1 < raw.size() && raw[i + 1] >= 'a' && raw[i + 1] <= 'z';
      if (is_lower_or_digit(prev) || (is_upper(prev) && next_lower)) spaced += ' ';
    }
    spaced += is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c;
  }

  std::string out;
  out.reserve(spaced.size());
  for (char c : spaced) {
    if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
    out += c;
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
    bool ok = len > 0 && i + len <= s.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      // Stray bytes map to the low-surrogate escape range, one per byte.
      out.push_back(0xDC00 + c);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::size_t gestalt_matches(std::u32string_view a, std::u32string_view b) {
  std::size_t matched = 0;
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::vector<Block> pending{{0, a.size(), 0, b.size()}};
  while (!pending.empty()) {
    Block blk = pending.back();
    pending.pop_back();
    if (blk.a_lo >= blk.a_hi || blk.b_lo >= blk.b_hi) continue;

    // Longest common substring by suffix-length DP. A strict '>' keeps the
    // first maximum in (a end, b end) order, i.e. the leftmost match.
    std::size_t best_i = blk.a_lo, best_j = blk.b_lo, best_k = 0;
    std::fill(prev.begin() + static_cast<std::ptrdiff_t>(blk.b_lo),
              prev.begin() + static_cast<std::ptrdiff_t>(blk.b_hi) + 1, 0);
    for (std::size_t i = blk.a_lo; i < blk.a_hi; ++i) {
      cur[blk.b_lo] = 0;
      for (std::size_t j = blk.b_lo; j < blk.b_hi; ++j) {
        std::size_t k = a[i] == b[j] ? prev[j] + 1 : 0;
        cur[j + 1] = k;
        if (k > best_k) {
          best_k = k;
          best_i = i + 1 - k;
          best_j = j + 1 - k;
        }
      }
      std::swap(prev, cur);
    }
    if (best_k == 0) continue;
    matched += best_k;
    pending.push_back({best_i + best_k, blk.a_hi, best_j + best_k, blk.b_hi});
    pending.push_back({blk.a_lo, best_i, blk.b_lo, best_j});
  }
  return matched;
}

double gestalt_similarity(std::string_view a, std::string_view b) {
  auto ua = decode_utf8(a);
  auto ub = decode_utf8(b);
  const std::size_t total = ua.size() + ub.size();
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(gestalt_matches(ua, ub)) / static_cast<double>(total);
}

}  // namespace kgenrich
