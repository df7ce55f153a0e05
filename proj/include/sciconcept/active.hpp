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

// Pool-based active learning simulation over sentences: MNLP uncertainty
// sampling and a random baseline, retraining from scratch each iteration.

#ifndef SCICONCEPT_ACTIVE_HPP_
#define SCICONCEPT_ACTIVE_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sciconcept/folds.hpp"
#include "sciconcept/metrics.hpp"
#include "sciconcept/model.hpp"
#include "sciconcept/rng.hpp"

namespace sciconcept {

enum class Strategy { kMnlp, kRandom };

std::string_view StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);

struct ALConfig {
  Strategy strategy = Strategy::kMnlp;
  double batch_fraction = 0.04;
  int iterations = 25;
  double seed_fraction = 0.04;  // labelled share before the first training
  int folds = 5;
  std::uint64_t seed = 0;

  // Throws ValidationError unless fractions are in (0, 1], iterations >= 1
  // and seed_fraction + (iterations - 1) * batch_fraction reaches at most
  // 1 + batch_fraction.
  void Validate() const;
};

// Sentence identity: document id and sentence index. Ordered by document
// id, then index; this is the MNLP tie order.
struct SentenceId {
  std::string document;
  int sentence = 0;
  auto operator<=>(const SentenceId&) const = default;
  std::string str() const;
};

// (1/n) * log p(viterbi path | x). Always <= 0; lower is more uncertain.
double MnlpScore(const CrfWeights& weights, const SentenceFeatures& x);
double MnlpScore(const CrfModel& model, const Sentence& sentence);

// MNLP scores of many sentences, input order.
std::vector<double> ScorePool(const CrfModel& model,
                              std::span<const Sentence* const> sentences,
                              Execution exec = Execution::kParallel);

// Picks `batch_size` entries of `pool`. MNLP: lowest scores first, equal
// scores by SentenceId. Random: uniform without replacement. Returns the
// chosen ids sorted. Throws ValidationError on an empty pool or when
// batch_size exceeds the pool; scores must match the pool for MNLP.
std::vector<SentenceId> SelectBatch(std::span<const SentenceId> pool,
                                    std::span<const double> scores,
                                    Strategy strategy, int batch_size,
                                    Rng& rng);

// Labelled sentences before training at `iteration` (1-based) for a pool of
// `n` training sentences: ceil(n * (seed + (iteration-1) * batch)), capped
// at n.
int LabelledSize(const ALConfig& config, int n, int iteration);

// Nominal budget of `iteration`, min(1, seed + (iteration-1) * batch).
double NominalFraction(const ALConfig& config, int iteration);

struct ALIteration {
  int iteration = 0;
  double fraction = 0.0;  // nominal budget
  int labelled = 0;       // labelled sentences this model was trained on
  // Sentences added for this iteration (the seed set for iteration 1).
  std::vector<SentenceId> sampled;
  std::array<int, kNumDomains> sampled_per_domain{};
  std::array<int, kNumDomains> labelled_per_domain{};
  double dev_f1 = 0.0;
  double test_f1 = 0.0;
};

struct FoldTrace {
  int fold = 0;
  Strategy strategy = Strategy::kMnlp;
  std::vector<ALIteration> iterations;
};

struct BudgetSummary {
  int iteration = 0;
  double fraction = 0.0;
  MeanStd dev_f1;
  MeanStd test_f1;
  std::array<double, kNumDomains> labelled_per_domain{};  // mean over folds
};

struct StrategyTrace {
  Strategy strategy = Strategy::kMnlp;
  std::vector<FoldTrace> folds;
  std::vector<BudgetSummary> budgets;
};

struct ALExperiment {
  std::vector<double> full_test_f1;  // full-data model, per fold
  MeanStd full;
  std::vector<StrategyTrace> strategies;
};

// Runs every strategy over the first config.folds folds of `plan`. Each
// fold seeds the labelled set with a domain-stratified sample shared by all
// strategies, then loops {train from scratch, record dev/test span F1,
// score the pool, move the selected batch to the labelled set}. Training
// failures are rethrown with the fold and iteration prepended.
ALExperiment RunAlExperiment(const Corpus& corpus, const FoldPlan& plan,
                             const FeatureExtractor& extractor,
                             const TrainConfig& train_config,
                             const ALConfig& al_config,
                             std::span<const Strategy> strategies,
                             Execution exec = Execution::kParallel);

// Smallest nominal budget whose mean test F1 is >= `threshold`, or nullopt.
std::optional<double> ParityBudget(const StrategyTrace& trace,
                                   double threshold);

// One row per (strategy, fold, iteration): iteration, fraction, labelled,
// strategy, fold, dev_f1, test_f1, sampled and cumulative per-domain counts.
std::string AlTraceCsv(const ALExperiment& experiment);
// One row per (strategy, iteration) with fold mean and std, plus the
// full-data reference and each strategy's parity budget (first budget whose
// mean test F1 reaches the full-data mean minus one std).
std::string AlSummaryCsv(const ALExperiment& experiment);

}  // namespace sciconcept

#endif  // SCICONCEPT_ACTIVE_HPP_
