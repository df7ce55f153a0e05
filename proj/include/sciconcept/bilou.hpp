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

// BILOU tag set over the four concepts and the span <-> tag codec.
//
// Tag indices: O = 0, then prefix-major B, I, L, U, each over Process,
// Method, Material, Data. So B-Process = 1, B-Data = 4, I-Process = 5, ...,
// U-Data = 16.

#ifndef SCICONCEPT_BILOU_HPP_
#define SCICONCEPT_BILOU_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sciconcept/corpus.hpp"

namespace sciconcept {

enum class Prefix : std::uint8_t { kBegin = 0, kInside, kLast, kUnit };

inline constexpr int kNumTags = 17;
inline constexpr int kOutsideTag = 0;

// Dense tag index in [0, kNumTags).
using Tag = int;
using TagSequence = std::vector<Tag>;

constexpr Tag MakeTag(Prefix p, Concept c) {
  return 1 + static_cast<int>(p) * kNumConcepts + static_cast<int>(c);
}
constexpr bool IsOutside(Tag t) { return t == kOutsideTag; }
constexpr Prefix PrefixOf(Tag t) {
  return static_cast<Prefix>((t - 1) / kNumConcepts);
}
constexpr Concept ConceptOf(Tag t) {
  return static_cast<Concept>((t - 1) % kNumConcepts);
}

std::string TagName(Tag t);
std::optional<Tag> ParseTag(std::string_view name);

// BILOU grammar. Start may be followed by O, B-*, U-*; end may follow
// O, L-*, U-*.
bool TransitionAllowed(Tag from, Tag to);
bool StartAllowed(Tag t);
bool EndAllowed(Tag t);
bool IsWellFormed(std::span<const Tag> tags);

// Spans must be pairwise disjoint and inside [0, sentence_length); an
// overlap throws ValidationError. sentence indices of the spans are ignored.
TagSequence EncodeBilou(int sentence_length,
                        std::span<const SpanAnnotation> spans);

// Total. Well-formed input decodes to the exact inverse of EncodeBilou.
// Ill-formed input is repaired left to right: a run opened by any non-O tag
// keeps absorbing I- tags of its type, absorbs and closes on L- of its type,
// and is closed before O, B-, U-, or a type change. A leading I- or L-
// opens a run like B-. Output spans carry `sentence_index`.
std::vector<SpanAnnotation> DecodeBilou(std::span<const Tag> tags,
                                        int sentence_index = 0);

// Label used for token-level agreement and confusion: concept index, or
// kNumConcepts for O.
inline int CollapsedLabel(Tag t) {
  return IsOutside(t) ? kNumConcepts : static_cast<int>(ConceptOf(t));
}

// Gold tags of every sentence of a document.
std::vector<TagSequence> DocumentTags(const Document& doc);

}  // namespace sciconcept

#endif  // SCICONCEPT_BILOU_HPP_
