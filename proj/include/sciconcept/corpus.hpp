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

// Data model for annotated abstracts: concept types, STM domains, tokens,
// sentences, documents and their non-nested typed spans.

#ifndef SCICONCEPT_CORPUS_HPP_
#define SCICONCEPT_CORPUS_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sciconcept {

enum class Concept : std::uint8_t { kProcess = 0, kMethod, kMaterial, kData };
inline constexpr int kNumConcepts = 4;
inline constexpr std::array<Concept, kNumConcepts> kAllConcepts = {
    Concept::kProcess, Concept::kMethod, Concept::kMaterial, Concept::kData};

std::string_view ConceptName(Concept c);
// Exact, case-sensitive match on "Process", "Method", "Material", "Data".
std::optional<Concept> ParseConcept(std::string_view name);

// The ten STM domains.
enum class Domain : std::uint8_t {
  kAgr = 0, kAst, kBio, kChe, kCS, kES, kEng, kMS, kMat, kMed
};
inline constexpr int kNumDomains = 10;
inline constexpr std::array<Domain, kNumDomains> kAllDomains = {
    Domain::kAgr, Domain::kAst, Domain::kBio, Domain::kChe, Domain::kCS,
    Domain::kES,  Domain::kEng, Domain::kMS,  Domain::kMat, Domain::kMed};

std::string_view DomainCode(Domain d);
std::optional<Domain> ParseDomain(std::string_view code);

struct Token {
  std::string text;
  int start = 0;  // character offset within the sentence
  int end = 0;    // exclusive

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;

  int size() const { return static_cast<int>(tokens.size()); }
  bool operator==(const Sentence&) const = default;
};

struct SpanAnnotation {
  int sentence = 0;
  int start = 0;  // token index
  int end = 0;    // exclusive token index
  Concept kind = Concept::kProcess;

  auto operator<=>(const SpanAnnotation&) const = default;
};

struct Document {
  std::string id;
  Domain domain = Domain::kAgr;
  std::vector<Sentence> sentences;
  std::vector<SpanAnnotation> annotations;  // sorted by (sentence, start)

  bool operator==(const Document&) const = default;
};

using Corpus = std::vector<Document>;

// Identifies one sentence inside a corpus.
struct SentenceRef {
  int document = 0;
  int sentence = 0;

  auto operator<=>(const SentenceRef&) const = default;
};

// Throws ValidationError naming the document if any token, sentence or span
// invariant is violated. Sorts nothing; call NormalizeDocument first if the
// span order is not canonical.
void ValidateDocument(const Document& doc);

// Sorts annotations into canonical (sentence, start) order.
void NormalizeDocument(Document& doc);

// Spans of one sentence, in token order.
std::vector<SpanAnnotation> SpansOfSentence(const Document& doc, int sentence);

// Surface string of a span: token texts joined by single spaces.
std::string SpanSurface(const Sentence& sentence, int start, int end);

// Builds a sentence from texts, offsets assigned as if joined by one space.
Sentence MakeSentence(const std::vector<std::string>& words);

std::string ToLowerAscii(std::string_view s);

int CountTokens(const Document& doc);
int CountSentences(const Corpus& corpus);

}  // namespace sciconcept

#endif  // SCICONCEPT_CORPUS_HPP_
