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

#include <string>
#include <string_view>

namespace kgenrich {

// Canonical comparison form of a property label: namespace stripped,
// camelCase and underscores split into words, lowercased, single-spaced.
// normalize_label(normalize_label(x)) == normalize_label(x).
std::string normalize_label(std::string_view raw);

// Ratcliff/Obershelp "gestalt" ratio 2*M / (|a| + |b|), where M counts the
// characters matched by taking the longest common substring (leftmost in a,
// then leftmost in b) and recursing on the unmatched flanks. Operates on
// Unicode code points of UTF-8 input. Two empty strings compare as 1.0.
double gestalt_similarity(std::string_view a, std::string_view b);

// Number of matched code points M for the pair above.
std::size_t gestalt_matches(std::u32string_view a, std::u32string_view b);

std::u32string decode_utf8(std::string_view s);

}  // namespace kgenrich
