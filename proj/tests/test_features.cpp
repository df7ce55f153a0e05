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

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "sciconcept/features.hpp"
#include "sciconcept/rng.hpp"
#include "sciconcept/synth.hpp"

using namespace sciconcept;

namespace {

bool Has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

Document OneSentenceDoc(const std::vector<std::string>& words) {
  Document d;
  d.id = "d";
  d.sentences.push_back(MakeSentence(words));
  return d;
}

}  // namespace

TEST_CASE("word shape") {
  CHECK(WordShape("X-ray", false) == "X-xxx");
  CHECK(WordShape("X-ray", true) == "X-x");
  CHECK(WordShape("CO2", false) == "XXd");
  CHECK(WordShape("CO2", true) == "Xd");
  CHECK(WordShape("3.5", true) == "d.d");
}

TEST_CASE("token templates") {
  const FeatureExtractor ex;
  const auto f = ex.FeatureStrings(MakeSentence({"X-ray", "of", "CO2"}));
  REQUIRE(f.size() == 3);
  CHECK(Has(f[0], "w=x-ray"));
  CHECK(Has(f[0], "lshape=X-xxx"));
  CHECK(Has(f[0], "shape=X-x"));
  CHECK(Has(f[0], "s3=ray"));
  CHECK(Has(f[0], "p1=x"));
  CHECK(Has(f[0], "is_cap"));
  CHECK(Has(f[0], "BOS"));
  CHECK_FALSE(Has(f[0], "EOS"));
  CHECK(Has(f[0], "w[-1]=<s>"));
  CHECK(Has(f[0], "w[1]=of"));
  CHECK(Has(f[0], "w[2]=co2"));
  CHECK(Has(f[2], "EOS"));
  CHECK(Has(f[2], "has_digit"));
  CHECK(Has(f[2], "all_caps"));
  CHECK(Has(f[2], "w[1]=</s>"));
  CHECK_FALSE(Has(f[2], "is_digit"));
}

TEST_CASE("index is lexicographic, thresholded and reproducible") {
  Corpus c = {OneSentenceDoc({"X"}), OneSentenceDoc({"rare", "common"}),
              OneSentenceDoc({"common"})};
  c[1].id = "e";
  c[2].id = "f";
  const FeatureExtractor ex;
  const FeatureIndex one = BuildFeatureIndex(c, ex, 1);
  CHECK(one.Lookup("w=x").has_value());
  CHECK(std::is_sorted(one.strings().begin(), one.strings().end()));
  const FeatureIndex two = BuildFeatureIndex(c, ex, 2);
  CHECK_FALSE(two.Lookup("w=rare").has_value());
  CHECK(two.Lookup("w=common").has_value());
  CHECK(BuildFeatureIndex(c, ex, 1).Serialize() == one.Serialize());
}

TEST_CASE("unknown features are dropped and vectors are sorted") {
  const Corpus train = {OneSentenceDoc({"alpha", "beta"})};
  const FeatureExtractor ex;
  const FeatureIndex index = BuildFeatureIndex(train, ex, 1);
  const auto x = ex.Extract(MakeSentence({"gamma", "alpha"}), index);
  REQUIRE(x.size() == 2);
  for (const auto& v : x) {
    CHECK(std::is_sorted(v.begin(), v.end()));
    CHECK(std::adjacent_find(v.begin(), v.end()) == v.end());
    for (int id : v) CHECK(id < index.size());
  }
  CHECK(std::find(x[1].begin(), x[1].end(), *index.Lookup("w=alpha")) !=
        x[1].end());
  CHECK(ex.Extract(MakeSentence({"gamma", "alpha"}), index) == x);
}

TEST_CASE("changing a token only affects its context window") {
  const FeatureExtractor ex;
  Rng rng(4);
  const std::vector<std::string> vocab = {"a", "Bb", "c3", "-", "Delta",
                                          "eps", "Zz9", "."};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformIndex(10));
    std::vector<std::string> words(n);
    for (auto& w : words) w = rng.Pick(vocab);
    auto changed = words;
    const int i = static_cast<int>(rng.UniformIndex(n));
    changed[i] = rng.Pick(vocab);
    const auto a = ex.FeatureStrings(MakeSentence(words));
    const auto b = ex.FeatureStrings(MakeSentence(changed));
    for (int t = 0; t < n; ++t) {
      if (std::abs(t - i) > 2) CHECK(a[t] == b[t]);
    }
  }
}

TEST_CASE("gazetteer and cluster resources") {
  const auto dir = std::filesystem::temp_directory_path() / "sci_feat_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream g(dir / "material.txt");
    g << "Material\nsilicon carbide\nsteel\n";
    std::ofstream c(dir / "clusters.tsv");
    c << "steel\t0110\nCarbide\t0111\n";
  }
  Gazetteer gaz;
  gaz.LoadFile(dir / "material.txt");
  ClusterMap clusters;
  clusters.LoadFile(dir / "clusters.tsv");
  const Sentence s = MakeSentence({"the", "Silicon", "carbide", "steel"});
  const auto m = gaz.Match(s);
  CHECK_FALSE(m[0].has_value());
  CHECK(m[1] == Concept::kMaterial);
  CHECK(m[2] == Concept::kMaterial);
  CHECK(m[3] == Concept::kMaterial);
  CHECK(clusters.Find("steel") == "0110");
  CHECK(clusters.Find("Steel") == "0110");
  CHECK(clusters.Find("Carbide") == "0111");
  CHECK_FALSE(clusters.Find("carbide").has_value());
  const FeatureExtractor ex(gaz, clusters);
  const auto f = ex.FeatureStrings(s);
  CHECK(Has(f[1], "gaz=Material"));
  CHECK(Has(f[3], "cl=0110"));
  CHECK_FALSE(Has(f[0], "gaz=Material"));
}
