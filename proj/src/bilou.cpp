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

#include "sciconcept/bilou.hpp"

#include "sciconcept/error.hpp"

namespace sciconcept {

namespace {
constexpr char kPrefixChars[] = {'B', 'I', 'L', 'U'};
}  // namespace

std::string TagName(Tag t) {
  if (IsOutside(t)) return "O";
  std::string out(1, kPrefixChars[static_cast<int>(PrefixOf(t))]);
  out += '-';
  out += ConceptName(ConceptOf(t));
  return out;
}

std::optional<Tag> ParseTag(std::string_view name) {
  if (name == "O") return kOutsideTag;
  if (name.size() < 3 || name[1] != '-') return std::nullopt;
  int prefix = -1;
  for (int i = 0; i < 4; ++i) {
    if (name[0] == kPrefixChars[i]) prefix = i;
  }
  if (prefix < 0) return std::nullopt;
  const auto kind = ParseConcept(name.substr(2));
  if (!kind) return std::nullopt;
  return MakeTag(static_cast<Prefix>(prefix), *kind);
}

bool StartAllowed(Tag t) {
  if (IsOutside(t)) return true;
  const Prefix p = PrefixOf(t);
  return p == Prefix::kBegin || p == Prefix::kUnit;
}

bool EndAllowed(Tag t) {
  if (IsOutside(t)) return true;
  const Prefix p = PrefixOf(t);
  return p == Prefix::kLast || p == Prefix::kUnit;
}

bool TransitionAllowed(Tag from, Tag to) {
  const bool from_open = !IsOutside(from) && (PrefixOf(from) == Prefix::kBegin ||
                                              PrefixOf(from) == Prefix::kInside);
  if (from_open) {
    if (IsOutside(to)) return false;
    const Prefix p = PrefixOf(to);
    return (p == Prefix::kInside || p == Prefix::kLast) &&
           ConceptOf(to) == ConceptOf(from);
  }
  // After O, L-X or U-X a new span may start anywhere.
  return StartAllowed(to);
}

bool IsWellFormed(std::span<const Tag> tags) {
  if (tags.empty()) return true;
  if (!StartAllowed(tags.front()) || !EndAllowed(tags.back())) return false;
  for (std::size_t i = 1; i < tags.size(); ++i) {
    if (!TransitionAllowed(tags[i - 1], tags[i])) return false;
  }
  return true;
}

TagSequence EncodeBilou(int sentence_length,
                        std::span<const SpanAnnotation> spans) {
  TagSequence tags(sentence_length, kOutsideTag);
  for (const SpanAnnotation& s : spans) {
    if (s.start < 0 || s.start >= s.end || s.end > sentence_length) {
      throw ValidationError("span [" + std::to_string(s.start) + "," +
                            std::to_string(s.end) +
                            ") out of range for sentence of length " +
                            std::to_string(sentence_length));
    }
    for (int t = s.start; t < s.end; ++t) {
      if (!IsOutside(tags[t])) {
        throw ValidationError("overlapping spans at token " +
                              std::to_string(t));
      }
    }
    if (s.end - s.start == 1) {
      tags[s.start] = MakeTag(Prefix::kUnit, s.kind);
      continue;
    }
    tags[s.start] = MakeTag(Prefix::kBegin, s.kind);
    for (int t = s.start + 1; t < s.end - 1; ++t) {
      tags[t] = MakeTag(Prefix::kInside, s.kind);
    }
    tags[s.end - 1] = MakeTag(Prefix::kLast, s.kind);
  }
  return tags;
}

std::vector<SpanAnnotation> DecodeBilou(std::span<const Tag> tags,
                                        int sentence_index) {
  std::vector<SpanAnnotation> spans;
  const int n = static_cast<int>(tags.size());
  int i = 0;
  while (i < n) {
    const Tag tag = tags[i];
    if (IsOutside(tag)) {
      ++i;
      continue;
    }
    const Concept kind = ConceptOf(tag);
    const Prefix prefix = PrefixOf(tag);
    int end = i + 1;
    if (prefix == Prefix::kBegin || prefix == Prefix::kInside) {
      while (end < n && !IsOutside(tags[end]) &&
             ConceptOf(tags[end]) == kind) {
        const Prefix p = PrefixOf(tags[end]);
        if (p == Prefix::kInside) {
          ++end;
        } else if (p == Prefix::kLast) {
          ++end;
          break;
        } else {
          break;
        }
      }
    }
    spans.push_back(SpanAnnotation{sentence_index, i, end, kind});
    i = end;
  }
  return spans;
}

std::vector<TagSequence> DocumentTags(const Document& doc) {
  std::vector<TagSequence> out;
  out.reserve(doc.sentences.size());
  for (int s = 0; s < static_cast<int>(doc.sentences.size()); ++s) {
    const auto spans = SpansOfSentence(doc, s);
    out.push_back(EncodeBilou(doc.sentences[s].size(), spans));
  }
  return out;
}

}  // namespace sciconcept
