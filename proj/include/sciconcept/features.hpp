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

// Sparse binary token features for the CRF.
//
// Per token the extractor fires:
//   bias
//   w=<lowercased token>, shape=<collapsed shape>, lshape=<full shape>
//   p1..p4=<prefix>, s1..s4=<suffix> (of the lowercased token, in code points)
//   is_digit, has_digit, is_punct, is_cap, all_caps
//   w[k]=, shape[k]= for k in {-2, -1, +1, +2}; positions outside the
//   sentence use the markers <s> and </s>
//   BOS on the first token, EOS on the last
//   gaz=<Concept> when the token lies inside a gazetteer match (optional)
//   cl=<id> for tokens listed in a word-cluster file (optional)
//
// Word shape maps upper-case letters to X, lower-case to x, digits to d,
// other non-ASCII code points to u, and keeps punctuation. "lshape" keeps
// every character, "shape" collapses runs: "X-ray" -> X-xxx / X-x.

#ifndef SCICONCEPT_FEATURES_HPP_
#define SCICONCEPT_FEATURES_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sciconcept/corpus.hpp"

namespace sciconcept {

// Sorted, duplicate-free feature ids of one token.
using FeatureVector = std::vector<int>;

// Dense ids for feature strings, assigned in lexicographic order when the
// index is frozen. A frozen index never grows; unknown strings map to
// nothing.
class FeatureIndex {
 public:
  FeatureIndex() = default;
  // Takes ownership of a set of strings and freezes.
  explicit FeatureIndex(std::vector<std::string> strings);

  std::optional<int> Lookup(std::string_view feature) const;
  int size() const { return static_cast<int>(strings_.size()); }
  const std::vector<std::string>& strings() const { return strings_; }
  bool frozen() const { return frozen_; }

  // One feature string per line, id order.
  std::string Serialize() const;

  bool operator==(const FeatureIndex& other) const {
    return strings_ == other.strings_;
  }

 private:
  std::vector<std::string> strings_;
  std::unordered_map<std::string, int> ids_;
  bool frozen_ = false;
};

// Phrase lists per concept, matched case-insensitively on whole tokens.
class Gazetteer {
 public:
  void Add(Concept kind, const std::vector<std::string>& phrase_tokens);

  // File: first non-empty line names the concept (optionally after '#'),
  // then one phrase per line. Throws ParseError on unknown concept.
  void LoadFile(const std::filesystem::path& path);

  // Per token: concept of the longest match covering it, scanning left to
  // right; std::nullopt if uncovered.
  std::vector<std::optional<Concept>> Match(const Sentence& sentence) const;

  bool empty() const { return phrases_.empty(); }
  // (concept, lowercased phrase) pairs in sorted order.
  const std::map<std::vector<std::string>, Concept>& phrases() const {
    return phrases_;
  }

 private:
  std::map<std::vector<std::string>, Concept> phrases_;
  int max_length_ = 0;
};

// token -> cluster id, from "token<TAB>cluster" lines.
class ClusterMap {
 public:
  void Add(const std::string& token, const std::string& cluster);
  void LoadFile(const std::filesystem::path& path);
  std::optional<std::string_view> Find(std::string_view token) const;
  bool empty() const { return clusters_.empty(); }
  const std::map<std::string, std::string, std::less<>>& entries() const {
    return clusters_;
  }

 private:
  std::map<std::string, std::string, std::less<>> clusters_;
};

class FeatureExtractor {
 public:
  FeatureExtractor() = default;
  FeatureExtractor(Gazetteer gazetteer, ClusterMap clusters)
      : gazetteer_(std::move(gazetteer)), clusters_(std::move(clusters)) {}

  // Feature strings per token, in template order (may repeat).
  std::vector<std::vector<std::string>> FeatureStrings(
      const Sentence& sentence) const;

  // Ids for every known feature; one vector per token.
  std::vector<FeatureVector> Extract(const Sentence& sentence,
                                     const FeatureIndex& index) const;

  const Gazetteer& gazetteer() const { return gazetteer_; }
  const ClusterMap& clusters() const { return clusters_; }

 private:
  Gazetteer gazetteer_;
  ClusterMap clusters_;
};

// Every feature string occurring at least `min_count` times (counted per
// token occurrence) in the training corpus.
FeatureIndex BuildFeatureIndex(const Corpus& train,
                               const FeatureExtractor& extractor,
                               int min_count);

std::string WordShape(std::string_view token, bool collapse);

}  // namespace sciconcept

#endif  // SCICONCEPT_FEATURES_HPP_
