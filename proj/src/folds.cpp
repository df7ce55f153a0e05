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

#include "sciconcept/folds.hpp"

#include <algorithm>
#include <set>

#include "sciconcept/error.hpp"
#include "sciconcept/rng.hpp"

namespace sciconcept {

FoldPlan MakeFolds(const Corpus& corpus, int k, SplitCounts split,
                   std::uint64_t seed) {
  if (k < 1) throw UsageError("fold count must be at least 1");
  if (split.train < 1 || split.dev < 0 || split.test < 1) {
    throw UsageError("split needs at least one train and one test document");
  }
  std::array<std::vector<std::string>, kNumDomains> by_domain;
  for (const Document& d : corpus) {
    by_domain[static_cast<int>(d.domain)].push_back(d.id);
  }
  for (Domain dom : kAllDomains) {
    const auto& ids = by_domain[static_cast<int>(dom)];
    if (!ids.empty() && static_cast<int>(ids.size()) < split.total()) {
      throw ValidationError("domain " + std::string(DomainCode(dom)) +
                            " has " + std::to_string(ids.size()) +
                            " documents, split needs " +
                            std::to_string(split.total()));
    }
  }

  FoldPlan plan;
  plan.k = k;
  plan.split = split;
  plan.seed = seed;
  plan.folds.resize(k);
  Rng rng = Rng::Stream(seed, "folds");
  for (Domain dom : kAllDomains) {
    auto ids = by_domain[static_cast<int>(dom)];
    if (ids.empty()) continue;
    std::sort(ids.begin(), ids.end());
    rng.Shuffle(ids);
    const int m = static_cast<int>(ids.size());
    for (int f = 0; f < k; ++f) {
      const int start = f * split.test;
      auto take = [&](int offset, int count, std::vector<std::string>& out) {
        for (int i = 0; i < count; ++i) {
          out.push_back(ids[(start + offset + i) % m]);
        }
      };
      take(0, split.test, plan.folds[f].test);
      take(split.test, split.dev, plan.folds[f].dev);
      take(split.test + split.dev, split.train, plan.folds[f].train);
    }
  }
  return plan;
}

Corpus SelectDocuments(const Corpus& corpus,
                       const std::vector<std::string>& ids) {
  std::set<std::string> wanted(ids.begin(), ids.end());
  Corpus out;
  for (const Document& d : corpus) {
    if (wanted.erase(d.id) > 0) out.push_back(d);
  }
  if (!wanted.empty()) {
    throw ValidationError("unknown document id '" + *wanted.begin() + "'");
  }
  return out;
}

Corpus FilterDomain(const Corpus& corpus, Domain domain) {
  Corpus out;
  for (const Document& d : corpus) {
    if (d.domain == domain) out.push_back(d);
  }
  return out;
}

}  // namespace sciconcept
