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

#ifndef SCICONCEPT_STATS_HPP_
#define SCICONCEPT_STATS_HPP_

#include <array>
#include <string>

#include "sciconcept/corpus.hpp"

namespace sciconcept {

struct DomainStats {
  int documents = 0;
  int tokens = 0;
  int phrases = 0;
  // Distinct lower-cased span surfaces within the domain.
  int unique_phrases = 0;
  std::array<int, kNumConcepts> per_concept{};

  double avg_tokens() const {
    return documents == 0 ? 0.0 : static_cast<double>(tokens) / documents;
  }
  bool operator==(const DomainStats&) const = default;
};

struct CorpusStats {
  std::array<DomainStats, kNumDomains> domains{};
  // Sum over domains (unique_phrases included).
  DomainStats overall;

  const DomainStats& of(Domain d) const {
    return domains[static_cast<int>(d)];
  }
};

CorpusStats ComputeCorpusStats(const Corpus& corpus);

// Column order of the stats table: Ast Agr Eng ES Bio Med MS CS Che Mat.
inline constexpr std::array<Domain, kNumDomains> kStatsColumnOrder = {
    Domain::kAst, Domain::kAgr, Domain::kEng, Domain::kES, Domain::kBio,
    Domain::kMed, Domain::kMS,  Domain::kCS,  Domain::kChe, Domain::kMat};

// One row per statistic, one column per domain plus "Overall". Average
// token counts are rounded to the nearest integer.
std::string CorpusStatsCsv(const CorpusStats& stats);

}  // namespace sciconcept

#endif  // SCICONCEPT_STATS_HPP_
