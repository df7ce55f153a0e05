// Copyright 2026 The SciConcept Authors.
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

// Raw-text preprocessing for abstracts that arrive untokenized.

#ifndef SCICONCEPT_TEXT_HPP_
#define SCICONCEPT_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "sciconcept/corpus.hpp"

namespace sciconcept {

struct TextRange {
  int start = 0;
  int end = 0;
  bool operator==(const TextRange&) const = default;
};

// Sentence boundaries: '.', '?' or '!' followed by whitespace and an
// uppercase letter, unless the word ending in '.' is a known abbreviation
// ("e.g.", "et al.", "Fig.", ...). Ranges are trimmed of surrounding
// whitespace; empty input gives no ranges.
std::vector<TextRange> SplitSentences(std::string_view text);

// Whitespace and punctuation splitting; every punctuation character is its
// own token, except hyphens and apostrophes between word characters and
// '.' or ',' between digits. Bytes >= 0x80 count as word characters.
// Offsets are relative to `text`.
Sentence Tokenize(std::string_view text);

}  // namespace sciconcept

#endif  // SCICONCEPT_TEXT_HPP_
