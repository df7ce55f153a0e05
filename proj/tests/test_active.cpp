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

#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "sciconcept/active.hpp"
#include "sciconcept/error.hpp"
#include "sciconcept/synth.hpp"

using namespace sciconcept;

namespace {

std::vector<SentenceId> Pool(int n) {
  std::vector<SentenceId> pool;
  for (int i = 0; i < n; ++i) pool.push_back({"d" + std::to_string(i / 3), i % 3});
  return pool;
}

}  // namespace

TEST_CASE("MNLP of a flat model") {
  Rng rng(1);
  for (int n = 1; n <= 6; ++n) {
    const CrfWeights w(5, ConstraintMask::None());
    CHECK(MnlpScore(w, oracle::RandomFeatures(rng, n, 5)) ==
          doctest::Approx(-std::log(17.0)));
  }
}

TEST_CASE("MNLP against enumeration") {
  Rng rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformIndex(4));
    const CrfWeights w = oracle::RandomWeights(rng, 6, trial % 2 == 0, 2.0);
    const SentenceFeatures x = oracle::RandomFeatures(rng, n, 6);
    const oracle::Enumeration e = oracle::Enumerate(w, x);
    const double s = MnlpScore(w, x);
    CHECK(s == doctest::Approx((e.best_score - e.log_z) / n).epsilon(1e-10));
    CHECK(s <= 0.0);
  }
}

TEST_CASE("MNLP selection") {
  Rng rng(3);
  const std::vector<SentenceId> pool = {{"a", 0}, {"a", 1}, {"b", 0}};
  const std::vector<double> scores = {-2.0, -0.5, -1.0};
  const auto picked = SelectBatch(pool, scores, Strategy::kMnlp, 2, rng);
  CHECK(picked == std::vector<SentenceId>{{"a", 0}, {"b", 0}});

  // Equal scores go to the smaller id.
  const std::vector<SentenceId> tied = {{"c", 0}, {"a", 2}, {"b", 1}};
  const std::vector<double> same = {-1.0, -1.0, -1.0};
  CHECK(SelectBatch(tied, same, Strategy::kMnlp, 2, rng) ==
        std::vector<SentenceId>{{"a", 2}, {"b", 1}});

  // A constant shift changes nothing.
  Rng r(4);
  const std::vector<SentenceId> big = Pool(30);
  std::vector<double> s(30), shifted(30);
  for (int i = 0; i < 30; ++i) {
    s[i] = -r.UniformReal();
    shifted[i] = s[i] - 3.25;
  }
  CHECK(SelectBatch(big, s, Strategy::kMnlp, 7, rng) ==
        SelectBatch(big, shifted, Strategy::kMnlp, 7, rng));

  CHECK_THROWS_AS(SelectBatch({}, {}, Strategy::kMnlp, 1, rng), ValidationError);
  CHECK_THROWS_AS(SelectBatch(pool, scores, Strategy::kMnlp, 4, rng),
                  ValidationError);
}

TEST_CASE("random selection") {
  const std::vector<SentenceId> pool = Pool(10);
  Rng a(5), b(5);
  for (int i = 0; i < 20; ++i) {
    const auto x = SelectBatch(pool, {}, Strategy::kRandom, 4, a);
    CHECK(x == SelectBatch(pool, {}, Strategy::kRandom, 4, b));
    CHECK(std::set<SentenceId>(x.begin(), x.end()).size() == 4);
  }
  // Chi-square goodness of fit, df = 9, 1% critical value.
  Rng rng(6);
  std::array<int, 10> hits{};
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const auto x = SelectBatch(pool, {}, Strategy::kRandom, 1, rng);
    for (int k = 0; k < 10; ++k) hits[k] += x[0] == pool[k];
  }
  double chi2 = 0.0;
  for (int h : hits) chi2 += (h - draws / 10.0) * (h - draws / 10.0) / (draws / 10.0);
  CHECK(chi2 < 21.666);
}

TEST_CASE("budget schedule") {
  ALConfig c;
  for (int it = 1; it <= 25; ++it) {
    CHECK(NominalFraction(c, it) == doctest::Approx(0.04 * it));
  }
  CHECK(NominalFraction(c, 25) == doctest::Approx(1.0));
  CHECK(LabelledSize(c, 1000, 1) == 40);
  CHECK(LabelledSize(c, 1000, 25) == 1000);
  CHECK(LabelledSize(c, 99, 1) == 4);
  for (int it = 2; it <= 25; ++it) {
    CHECK(LabelledSize(c, 537, it) > LabelledSize(c, 537, it - 1));
  }
  ALConfig bad;
  bad.batch_fraction = 0.0;
  CHECK_THROWS_AS(bad.Validate(), ValidationError);
  bad = ALConfig{};
  bad.iterations = 30;
  CHECK_THROWS_AS(bad.Validate(), ValidationError);
}

TEST_CASE("small experiment") {
  DifficultyOptions opt;
  opt.sentences_per_document = 3;
  const Corpus corpus = MakeDifficultyCorpus(opt);
  const FoldPlan plan = MakeFolds(corpus, 2, SplitCounts{}, 1);
  TrainConfig tc;
  tc.max_epochs = 8;
  ALConfig al;
  al.folds = 2;
  al.iterations = 3;
  al.seed_fraction = 0.1;
  al.batch_fraction = 0.1;
  const std::vector<Strategy> both = {Strategy::kMnlp, Strategy::kRandom};
  const ALExperiment ex =
      RunAlExperiment(corpus, plan, FeatureExtractor{}, tc, al, both);
  REQUIRE(ex.strategies.size() == 2);
  CHECK(ex.full_test_f1.size() == 2);
  const int pool = 80 * 3;
  for (const StrategyTrace& st : ex.strategies) {
    REQUIRE(st.folds.size() == 2);
    CHECK(st.budgets.size() == 3);
    for (const FoldTrace& f : st.folds) {
      std::set<SentenceId> seen;
      for (const ALIteration& it : f.iterations) {
        const int want = LabelledSize(al, pool, it.iteration);
        CHECK(it.labelled == want);
        int sum = 0;
        for (int k : it.sampled_per_domain) sum += k;
        CHECK(sum == static_cast<int>(it.sampled.size()));
        int labelled = 0;
        for (int k : it.labelled_per_domain) labelled += k;
        CHECK(labelled == want);
        for (const SentenceId& id : it.sampled) CHECK(seen.insert(id).second);
        CHECK(static_cast<int>(seen.size()) == want);
      }
    }
  }
  // Both strategies share the seed set.
  CHECK(ex.strategies[0].folds[0].iterations[0].sampled ==
        ex.strategies[1].folds[0].iterations[0].sampled);
  CHECK(AlTraceCsv(ex) == AlTraceCsv(
      RunAlExperiment(corpus, plan, FeatureExtractor{}, tc, al, both)));
}

TEST_CASE("a full random batch reproduces the full-data model") {
  DifficultyOptions opt;
  opt.sentences_per_document = 2;
  const Corpus corpus = MakeDifficultyCorpus(opt);
  const FoldPlan plan = MakeFolds(corpus, 1, SplitCounts{}, 2);
  TrainConfig tc;
  tc.max_epochs = 6;
  ALConfig al;
  al.folds = 1;
  al.iterations = 2;
  al.batch_fraction = 1.0;
  const std::vector<Strategy> random = {Strategy::kRandom};
  const ALExperiment ex =
      RunAlExperiment(corpus, plan, FeatureExtractor{}, tc, al, random);
  const ALIteration& last = ex.strategies[0].folds[0].iterations.back();
  CHECK(last.labelled == 80 * 2);
  CHECK(last.test_f1 == ex.full_test_f1[0]);
}
