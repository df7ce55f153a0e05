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

#include "sciconcept/features.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "sciconcept/error.hpp"

namespace sciconcept {

namespace {

bool IsContinuationByte(char c) {
  return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

// Byte offsets of code point starts, plus the end offset.
std::vector<std::size_t> CodePointBounds(std::string_view s) {
  std::vector<std::size_t> bounds;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!IsContinuationByte(s[i])) bounds.push_back(i);
  }
  bounds.push_back(s.size());
  return bounds;
}

bool IsPunctToken(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::ispunct(static_cast<unsigned char>(c));
  });
}

std::vector<std::string> SplitWhitespace(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(ToLowerAscii(w));
  return out;
}

constexpr std::string_view kBosMarker = "<s>";
constexpr std::string_view kEosMarker = "</s>";
constexpr int kContextOffsets[] = {-2, -1, 1, 2};

}  // namespace

std::string WordShape(std::string_view token, bool collapse) {
  std::string out;
  for (std::size_t i = 0; i < token.size(); ++i) {
    const auto u = static_cast<unsigned char>(token[i]);
    char cls;
    if (u >= 0x80) {
      if (IsContinuationByte(token[i])) continue;
      cls = 'u';
    } else if (std::isupper(u)) {
      cls = 'X';
    } else if (std::islower(u)) {
      cls = 'x';
    } else if (std::isdigit(u)) {
      cls = 'd';
    } else {
      cls = token[i];
    }
    if (collapse && !out.empty() && out.back() == cls) continue;
    out += cls;
  }
  return out;
}

FeatureIndex::FeatureIndex(std::vector<std::string> strings)
    : strings_(std::move(strings)), frozen_(true) {
  std::sort(strings_.begin(), strings_.end());
  strings_.erase(std::unique(strings_.begin(), strings_.end()),
                 strings_.end());
  ids_.reserve(strings_.size());
  for (int i = 0; i < static_cast<int>(strings_.size()); ++i) {
    ids_.emplace(strings_[i], i);
  }
}

std::optional<int> FeatureIndex::Lookup(std::string_view feature) const {
  const auto it = ids_.find(std::string(feature));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::string FeatureIndex::Serialize() const {
  std::string out;
  for (const std::string& s : strings_) {
    out += s;
    out += '\n';
  }
  return out;
}

void Gazetteer::Add(Concept kind,
                    const std::vector<std::string>& phrase_tokens) {
  if (phrase_tokens.empty()) return;
  std::vector<std::string> key;
  for (const std::string& t : phrase_tokens) key.push_back(ToLowerAscii(t));
  phrases_.emplace(key, kind);
  max_length_ = std::max(max_length_, static_cast<int>(key.size()));
}

void Gazetteer::LoadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read gazetteer '" + path.string() + "'");
  std::string line;
  std::optional<Concept> kind;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!kind) {
      std::string name = line;
      name.erase(0, name.find_first_not_of("# \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      kind = ParseConcept(name);
      if (!kind) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) +
                         ": gazetteer header must name a concept, got '" +
                         name + "'");
      }
      continue;
    }
    Add(*kind, SplitWhitespace(line));
  }
}

std::vector<std::optional<Concept>> Gazetteer::Match(
    const Sentence& sentence) const {
  const int n = sentence.size();
  std::vector<std::optional<Concept>> out(n);
  if (phrases_.empty()) return out;
  std::vector<std::string> lower(n);
  for (int i = 0; i < n; ++i) lower[i] = ToLowerAscii(sentence.tokens[i].text);
  int i = 0;
  while (i < n) {
    int matched = 0;
    Concept kind = Concept::kProcess;
    for (int len = std::min(max_length_, n - i); len >= 1; --len) {
      const std::vector<std::string> key(lower.begin() + i,
                                         lower.begin() + i + len);
      const auto it = phrases_.find(key);
      if (it != phrases_.end()) {
        matched = len;
        kind = it->second;
        break;
      }
    }
    if (matched == 0) {
      ++i;
      continue;
    }
    for (int k = i; k < i + matched; ++k) out[k] = kind;
    i += matched;
  }
  return out;
}

void ClusterMap::Add(const std::string& token, const std::string& cluster) {
  clusters_[token] = cluster;
}

void ClusterMap::LoadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read cluster file '" + path.string() + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 'token<TAB>cluster'");
    }
    Add(line.substr(0, tab), line.substr(tab + 1));
  }
}

std::optional<std::string_view> ClusterMap::Find(std::string_view token) const {
  auto it = clusters_.find(token);
  if (it == clusters_.end()) it = clusters_.find(ToLowerAscii(token));
  if (it == clusters_.end()) return std::nullopt;
  return std::string_view(it->second);
}

std::vector<std::vector<std::string>> FeatureExtractor::FeatureStrings(
    const Sentence& sentence) const {
  const int n = sentence.size();
  std::vector<std::string> lower(n);
  std::vector<std::string> shape(n);
  for (int i = 0; i < n; ++i) {
    lower[i] = ToLowerAscii(sentence.tokens[i].text);
    shape[i] = WordShape(sentence.tokens[i].text, true);
  }
  const auto gaz = gazetteer_.Match(sentence);

  std::vector<std::vector<std::string>> out(n);
  for (int i = 0; i < n; ++i) {
    const std::string& text = sentence.tokens[i].text;
    auto& f = out[i];
    f.reserve(32);
    f.emplace_back("bias");
    f.push_back("w=" + lower[i]);
    f.push_back("shape=" + shape[i]);
    f.push_back("lshape=" + WordShape(text, false));

    const auto bounds = CodePointBounds(lower[i]);
    const int points = static_cast<int>(bounds.size()) - 1;
    for (int k = 1; k <= 4 && k <= points; ++k) {
      f.push_back("p" + std::to_string(k) + "=" + lower[i].substr(0, bounds[k]));
      const std::size_t from = bounds[points - k];
      f.push_back("s" + std::to_string(k) + "=" + lower[i].substr(from));
    }

    const bool all_digit = std::all_of(text.begin(), text.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c));
    });
    const bool any_digit = std::any_of(text.begin(), text.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c));
    });
    const bool any_alpha = std::any_of(text.begin(), text.end(), [](char c) {
      return std::isalpha(static_cast<unsigned char>(c));
    });
    const bool all_upper = any_alpha && std::none_of(
        text.begin(), text.end(),
        [](char c) { return std::islower(static_cast<unsigned char>(c)); });
    if (all_digit) f.emplace_back("is_digit");
    if (any_digit) f.emplace_back("has_digit");
    if (IsPunctToken(text)) f.emplace_back("is_punct");
    if (std::isupper(static_cast<unsigned char>(text[0]))) {
      f.emplace_back("is_cap");
    }
    if (all_upper) f.emplace_back("all_caps");

    for (int off : kContextOffsets) {
      const int j = i + off;
      const std::string tag = "[" + std::to_string(off) + "]=";
      if (j < 0) {
        f.push_back("w" + tag + std::string(kBosMarker));
        f.push_back("shape" + tag + std::string(kBosMarker));
      } else if (j >= n) {
        f.push_back("w" + tag + std::string(kEosMarker));
        f.push_back("shape" + tag + std::string(kEosMarker));
      } else {
        f.push_back("w" + tag + lower[j]);
        f.push_back("shape" + tag + shape[j]);
      }
    }
    if (i == 0) f.emplace_back("BOS");
    if (i == n - 1) f.emplace_back("EOS");
    if (gaz[i]) f.push_back("gaz=" + std::string(ConceptName(*gaz[i])));
    if (const auto cl = clusters_.Find(text)) {
      f.push_back("cl=" + std::string(*cl));
    }
  }
  return out;
}

std::vector<FeatureVector> FeatureExtractor::Extract(
    const Sentence& sentence, const FeatureIndex& index) const {
  const auto strings = FeatureStrings(sentence);
  std::vector<FeatureVector> out(strings.size());
  for (std::size_t i = 0; i < strings.size(); ++i) {
    for (const std::string& s : strings[i]) {
      if (const auto id = index.Lookup(s)) out[i].push_back(*id);
    }
    std::sort(out[i].begin(), out[i].end());
    out[i].erase(std::unique(out[i].begin(), out[i].end()), out[i].end());
  }
  return out;
}

FeatureIndex BuildFeatureIndex(const Corpus& train,
                               const FeatureExtractor& extractor,
                               int min_count) {
  std::unordered_map<std::string, int> counts;
  for (const Document& doc : train) {
    for (const Sentence& s : doc.sentences) {
      for (const auto& token_features : extractor.FeatureStrings(s)) {
        for (const std::string& f : token_features) ++counts[f];
      }
    }
  }
  std::vector<std::string> kept;
  for (const auto& [feature, count] : counts) {
    if (count >= min_count) kept.push_back(feature);
  }
  return FeatureIndex(std::move(kept));
}

}  // namespace sciconcept
