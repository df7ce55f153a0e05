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

#include "sciconcept/stats.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace sciconcept {

CorpusStats ComputeCorpusStats(const Corpus& corpus) {
  CorpusStats stats;
  std::array<std::set<std::string>, kNumDomains> surfaces;
  for (const Document& doc : corpus) {
    const int d = static_cast<int>(doc.domain);
    DomainStats& ds = stats.domains[d];
    ++ds.documents;
    ds.tokens += CountTokens(doc);
    for (const SpanAnnotation& a : doc.annotations) {
      ++ds.phrases;
      ++ds.per_concept[static_cast<int>(a.kind)];
      surfaces[d].insert(
          ToLowerAscii(SpanSurface(doc.sentences[a.sentence], a.start, a.end)));
    }
  }
  for (int d = 0; d < kNumDomains; ++d) {
    DomainStats& ds = stats.domains[d];
    ds.unique_phrases = static_cast<int>(surfaces[d].size());
    stats.overall.documents += ds.documents;
    stats.overall.tokens += ds.tokens;
    stats.overall.phrases += ds.phrases;
    stats.overall.unique_phrases += ds.unique_phrases;
    for (int c = 0; c < kNumConcepts; ++c) {
      stats.overall.per_concept[c] += ds.per_concept[c];
    }
  }
  return stats;
}

std::string CorpusStatsCsv(const CorpusStats& stats) {
  std::ostringstream out;
  out << "statistic";
  for (Domain d : kStatsColumnOrder) out << ',' << DomainCode(d);
  out << ",Overall\n";

  auto row = [&](const std::string& name,
                 const std::function<long(const DomainStats&)>& value) {
    out << name;
    for (Domain d : kStatsColumnOrder) out << ',' << value(stats.of(d));
    out << ',' << value(stats.overall) << '\n';
  };
  row("documents", [](const DomainStats& s) { return long{s.documents}; });
  row("avg_tokens_per_abstract",
      [](const DomainStats& s) { return std::lround(s.avg_tokens()); });
  row("phrases", [](const DomainStats& s) { return long{s.phrases}; });
  row("unique_phrases",
      [](const DomainStats& s) { return long{s.unique_phrases}; });
  for (Concept c : kAllConcepts) {
    row(std::string(ConceptName(c)), [c](const DomainStats& s) {
      return long{s.per_concept[static_cast<int>(c)]};
    });
  }
  return out.str();
}

}  // namespace sciconcept
