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

#ifndef SCICONCEPT_FOLDS_HPP_
#define SCICONCEPT_FOLDS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sciconcept/corpus.hpp"

namespace sciconcept {

// Documents per domain in each role.
struct SplitCounts {
  int train = 8;
  int dev = 1;
  int test = 2;

  int total() const { return train + dev + test; }
};

struct Fold {
  std::vector<std::string> train;
  std::vector<std::string> dev;
  std::vector<std::string> test;
};

struct FoldPlan {
  int k = 0;
  SplitCounts split;
  std::uint64_t seed = 0;
  std::vector<Fold> folds;
};

// Per domain the documents (sorted by id) are shuffled once with the
// "folds" stream of `seed` and then read as a ring: fold f takes `test`
// documents starting at f * test, then `dev`, then `train`. With 11
// documents and (8, 1, 2) every document of a domain is used in every fold
// and the test sets of the five folds are disjoint. Throws ValidationError
// naming the first domain with fewer than split.total() documents. Domains
// without any document are skipped.
FoldPlan MakeFolds(const Corpus& corpus, int k, SplitCounts split,
                   std::uint64_t seed);

// Documents of `corpus` whose ids are listed, in corpus order. Unknown ids
// throw ValidationError.
Corpus SelectDocuments(const Corpus& corpus,
                       const std::vector<std::string>& ids);

// Documents of one domain, in corpus order.
Corpus FilterDomain(const Corpus& corpus, Domain domain);

}  // namespace sciconcept

#endif  // SCICONCEPT_FOLDS_HPP_
