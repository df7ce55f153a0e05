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

#include "sciconcept/corpus.hpp"

#include <algorithm>
#include <cctype>

#include "sciconcept/error.hpp"

namespace sciconcept {

namespace {

constexpr std::array<std::string_view, kNumConcepts> kConceptNames = {
    "Process", "Method", "Material", "Data"};

constexpr std::array<std::string_view, kNumDomains> kDomainCodes = {
    "Agr", "Ast", "Bio", "Che", "CS", "ES", "Eng", "MS", "Mat", "Med"};

[[noreturn]] void Fail(const Document& doc, const std::string& what) {
  throw ValidationError("document '" + doc.id + "': " + what);
}

}  // namespace

std::string_view ConceptName(Concept c) {
  return kConceptNames[static_cast<int>(c)];
}

std::optional<Concept> ParseConcept(std::string_view name) {
  for (int i = 0; i < kNumConcepts; ++i) {
    if (kConceptNames[i] == name) return static_cast<Concept>(i);
  }
  return std::nullopt;
}

std::string_view DomainCode(Domain d) {
  return kDomainCodes[static_cast<int>(d)];
}

std::optional<Domain> ParseDomain(std::string_view code) {
  for (int i = 0; i < kNumDomains; ++i) {
    if (kDomainCodes[i] == code) return static_cast<Domain>(i);
  }
  return std::nullopt;
}

void ValidateDocument(const Document& doc) {
  if (doc.id.empty()) throw ValidationError("document with empty id");
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const Sentence& sent = doc.sentences[s];
    if (sent.tokens.empty()) {
      Fail(doc, "sentence " + std::to_string(s) + " has no tokens");
    }
    int prev_end = -1;
    for (std::size_t t = 0; t < sent.tokens.size(); ++t) {
      const Token& tok = sent.tokens[t];
      const std::string where =
          "sentence " + std::to_string(s) + " token " + std::to_string(t);
      if (tok.text.empty()) Fail(doc, where + " is empty");
      if (tok.start < 0 || tok.start >= tok.end) {
        Fail(doc, where + " has invalid offsets");
      }
      if (tok.start < prev_end) Fail(doc, where + " overlaps its predecessor");
      prev_end = tok.end;
    }
  }
  const SpanAnnotation* prev = nullptr;
  for (const SpanAnnotation& a : doc.annotations) {
    if (a.sentence < 0 ||
        a.sentence >= static_cast<int>(doc.sentences.size())) {
      Fail(doc, "annotation references missing sentence " +
                    std::to_string(a.sentence));
    }
    const int n = doc.sentences[a.sentence].size();
    if (a.start < 0 || a.start >= a.end || a.end > n) {
      Fail(doc, "annotation [" + std::to_string(a.start) + "," +
                    std::to_string(a.end) + ") out of range in sentence " +
                    std::to_string(a.sentence));
    }
    if (prev != nullptr) {
      if (prev->sentence > a.sentence ||
          (prev->sentence == a.sentence && prev->start > a.start)) {
        Fail(doc, "annotations are not in canonical order");
      }
      if (prev->sentence == a.sentence && a.start < prev->end) {
        Fail(doc, "overlapping or nested spans in sentence " +
                      std::to_string(a.sentence) + ": [" +
                      std::to_string(prev->start) + "," +
                      std::to_string(prev->end) + ") and [" +
                      std::to_string(a.start) + "," + std::to_string(a.end) +
                      ")");
      }
    }
    prev = &a;
  }
}

void NormalizeDocument(Document& doc) {
  std::sort(doc.annotations.begin(), doc.annotations.end());
}

std::vector<SpanAnnotation> SpansOfSentence(const Document& doc,
                                            int sentence) {
  std::vector<SpanAnnotation> out;
  for (const SpanAnnotation& a : doc.annotations) {
    if (a.sentence == sentence) out.push_back(a);
  }
  return out;
}

std::string SpanSurface(const Sentence& sentence, int start, int end) {
  std::string out;
  for (int t = start; t < end; ++t) {
    if (t > start) out += ' ';
    out += sentence.tokens[t].text;
  }
  return out;
}

Sentence MakeSentence(const std::vector<std::string>& words) {
  Sentence s;
  int offset = 0;
  for (const std::string& w : words) {
    const int len = static_cast<int>(w.size());
    s.tokens.push_back(Token{w, offset, offset + len});
    offset += len + 1;
  }
  return s;
}

std::string ToLowerAscii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

int CountTokens(const Document& doc) {
  int n = 0;
  for (const Sentence& s : doc.sentences) n += s.size();
  return n;
}

int CountSentences(const Corpus& corpus) {
  int n = 0;
  for (const Document& d : corpus) n += static_cast<int>(d.sentences.size());
  return n;
}

}  // namespace sciconcept
