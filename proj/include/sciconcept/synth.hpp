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

// Deterministic synthetic corpora used by tests, the acceptance suite and
// the `synth` command.

#ifndef SCICONCEPT_SYNTH_HPP_
#define SCICONCEPT_SYNTH_HPP_

#include <array>
#include <cstdint>

#include "sciconcept/corpus.hpp"

namespace sciconcept {

// Per-domain size profile of the annotated STM abstracts: 11 abstracts per
// domain, average abstract length, gold phrase count, distinct phrase count
// and per-concept counts.
struct DomainProfile {
  Domain domain;
  int documents;
  int avg_tokens;
  int phrases;
  int unique_phrases;
  std::array<int, kNumConcepts> per_concept;
};

const std::array<DomainProfile, kNumDomains>& StmProfiles();

// 110 abstracts whose statistics match StmProfiles() exactly (document
// count, total tokens = avg_tokens * documents, phrase, distinct phrase and
// per-concept counts). Concepts follow shared head-noun vocabularies with
// domain-specific modifiers, typed trigger words and some unannotated
// distractor phrases.
Corpus MakeStmFixture(std::uint64_t seed = 2020);

// Linearly separable corpus: every span is preceded by a trigger token
// unique to its concept, span words and filler words are disjoint.
// `sentences` are spread over the ten domains, 10 sentences per document.
Corpus MakeSeparableCorpus(int sentences = 1000, std::uint64_t seed = 7);

// Corpus with planted per-domain difficulty for active learning: most
// domains repeat a handful of templates over tiny vocabularies, the hard
// domains (Ast, CS, Mat) draw concept words from large vocabularies with
// no contextual or orthographic cue. 11 documents per domain.
struct DifficultyOptions {
  int sentences_per_document = 6;
  int hard_vocabulary = 120;  // words per concept in hard domains
  std::uint64_t seed = 11;
};
Corpus MakeDifficultyCorpus(const DifficultyOptions& options = {});

inline constexpr std::array<Domain, 3> kHardDomains = {
    Domain::kAst, Domain::kCS, Domain::kMat};

}  // namespace sciconcept

#endif  // SCICONCEPT_SYNTH_HPP_
