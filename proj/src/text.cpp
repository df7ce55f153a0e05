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

#include "sciconcept/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace sciconcept {

namespace {

constexpr std::array<std::string_view, 22> kAbbreviations = {
    "e.g.", "i.e.", "al.",  "fig.", "figs.", "eq.",  "eqs.", "ref.",
    "refs.", "vs.", "cf.",  "dr.",  "mr.",   "ms.",  "no.",  "approx.",
    "ca.",  "resp.", "sect.", "tab.", "vol.", "etc."};

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool IsWordChar(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u);
}

bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

bool IsAbbreviation(std::string_view text, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0 && !IsSpace(text[b - 1])) --b;
  const std::string word = ToLowerAscii(text.substr(b, dot - b + 1));
  if (std::find(kAbbreviations.begin(), kAbbreviations.end(), word) !=
      kAbbreviations.end()) {
    return true;
  }
  // Single initials such as "J." in author lists.
  return word.size() == 2 && std::isalpha(static_cast<unsigned char>(word[0]));
}

}  // namespace

std::vector<TextRange> SplitSentences(std::string_view text) {
  std::vector<TextRange> out;
  const std::size_t n = text.size();
  std::size_t start = 0;
  auto emit = [&](std::size_t b, std::size_t e) {
    while (b < e && IsSpace(text[b])) ++b;
    while (e > b && IsSpace(text[e - 1])) --e;
    if (b < e) out.push_back({static_cast<int>(b), static_cast<int>(e)});
  };
  for (std::size_t i = 0; i < n; ++i) {
    const char c = text[i];
    if (c != '.' && c != '?' && c != '!') continue;
    std::size_t j = i + 1;
    if (j >= n || !IsSpace(text[j])) continue;
    while (j < n && IsSpace(text[j])) ++j;
    if (j >= n || !std::isupper(static_cast<unsigned char>(text[j]))) continue;
    if (c == '.' && IsAbbreviation(text, i)) continue;
    emit(start, i + 1);
    start = j;
  }
  emit(start, n);
  return out;
}

Sentence Tokenize(std::string_view text) {
  Sentence s;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    if (IsSpace(text[i])) {
      ++i;
      continue;
    }
    const std::size_t b = i;
    if (!IsWordChar(text[i])) {
      ++i;
    } else {
      while (i < n) {
        if (IsWordChar(text[i])) {
          ++i;
          continue;
        }
        const char c = text[i];
        const bool joins_word = (c == '-' || c == '\'') && i + 1 < n &&
                                IsWordChar(text[i + 1]);
        const bool joins_number = (c == '.' || c == ',') && i + 1 < n &&
                                  IsDigit(text[i - 1]) && IsDigit(text[i + 1]);
        if (joins_word || joins_number) {
          ++i;
          continue;
        }
        break;
      }
    }
    s.tokens.push_back(Token{std::string(text.substr(b, i - b)),
                             static_cast<int>(b), static_cast<int>(i)});
  }
  return s;
}

}  // namespace sciconcept
