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

#include "sciconcept/active.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "sciconcept/error.hpp"

namespace sciconcept {

std::string_view StrategyName(Strategy s) {
  return s == Strategy::kMnlp ? "mnlp" : "random";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  if (name == "mnlp") return Strategy::kMnlp;
  if (name == "random") return Strategy::kRandom;
  return std::nullopt;
}

void ALConfig::Validate() const {
  auto in_unit = [](double f) { return f > 0.0 && f <= 1.0; };
  if (!in_unit(batch_fraction) || !in_unit(seed_fraction)) {
    throw ValidationError("active learning: fractions must lie in (0, 1]");
  }
  if (iterations < 1) {
    throw ValidationError("active learning: iterations must be >= 1");
  }
  if (folds < 1) throw ValidationError("active learning: folds must be >= 1");
  const double last = seed_fraction + (iterations - 1) * batch_fraction;
  if (last > 1.0 + batch_fraction + 1e-9) {
    throw ValidationError(
        "active learning: seed_fraction + (iterations - 1) * batch_fraction "
        "exceeds 1 + batch_fraction");
  }
}

std::string SentenceId::str() const {
  return document + "#" + std::to_string(sentence);
}

double MnlpScore(const CrfWeights& weights, const SentenceFeatures& x) {
  const DecodeResult best = ViterbiDecode(weights, x);
  return best.log_prob / static_cast<double>(x.size());
}

double MnlpScore(const CrfModel& model, const Sentence& sentence) {
  return MnlpScore(model.weights(), model.Features(sentence));
}

std::vector<double> ScorePool(const CrfModel& model,
                              std::span<const Sentence* const> sentences,
                              Execution exec) {
  const long n = static_cast<long>(sentences.size());
  for (const Sentence* s : sentences) {
    if (s->size() == 0) throw ValidationError("cannot score an empty sentence");
  }
  std::vector<double> scores(sentences.size());
#pragma omp parallel for schedule(dynamic, 8) if (exec == Execution::kParallel)
  for (long i = 0; i < n; ++i) {
    scores[i] = MnlpScore(model, *sentences[i]);
  }
  return scores;
}

std::vector<SentenceId> SelectBatch(std::span<const SentenceId> pool,
                                    std::span<const double> scores,
                                    Strategy strategy, int batch_size,
                                    Rng& rng) {
  if (pool.empty()) throw ValidationError("cannot select from an empty pool");
  if (batch_size < 0 || batch_size > static_cast<int>(pool.size())) {
    throw ValidationError("batch size " + std::to_string(batch_size) +
                          " exceeds the pool of " +
                          std::to_string(pool.size()));
  }
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  if (strategy == Strategy::kMnlp) {
    if (scores.size() != pool.size()) {
      throw ValidationError("one score per pool sentence required");
    }
    std::partial_sort(order.begin(), order.begin() + batch_size, order.end(),
                      [&](std::size_t a, std::size_t b) {
                        if (scores[a] != scores[b]) return scores[a] < scores[b];
                        return pool[a] < pool[b];
                      });
  } else {
    // Partial Fisher-Yates.
    for (int i = 0; i < batch_size; ++i) {
      const std::size_t j = i + rng.UniformIndex(order.size() - i);
      std::swap(order[i], order[j]);
    }
  }
  std::vector<SentenceId> out;
  out.reserve(batch_size);
  for (int i = 0; i < batch_size; ++i) out.push_back(pool[order[i]]);
  std::sort(out.begin(), out.end());
  return out;
}

double NominalFraction(const ALConfig& config, int iteration) {
  return std::min(1.0, config.seed_fraction +
                           (iteration - 1) * config.batch_fraction);
}

int LabelledSize(const ALConfig& config, int n, int iteration) {
  const double raw =
      n * (config.seed_fraction + (iteration - 1) * config.batch_fraction);
  // Guard against 0.04 * 25 landing a hair above an integer.
  const int size = static_cast<int>(std::ceil(raw - 1e-9));
  return std::clamp(size, 0, n);
}

namespace {

// Training documents of a fold, restricted to a sentence subset. Documents
// keep id order and sentences keep their order, so the same subset always
// produces the same corpus regardless of the order it was sampled in.
Corpus SubsetSentences(const Corpus& docs, const std::set<SentenceId>& keep) {
  Corpus out;
  for (const Document& doc : docs) {
    Document sub;
    sub.id = doc.id;
    sub.domain = doc.domain;
    std::vector<int> remap(doc.sentences.size(), -1);
    for (int s = 0; s < static_cast<int>(doc.sentences.size()); ++s) {
      if (!keep.count(SentenceId{doc.id, s})) continue;
      remap[s] = static_cast<int>(sub.sentences.size());
      sub.sentences.push_back(doc.sentences[s]);
    }
    if (sub.sentences.empty()) continue;
    for (const SpanAnnotation& a : doc.annotations) {
      if (remap[a.sentence] < 0) continue;
      SpanAnnotation b = a;
      b.sentence = remap[a.sentence];
      sub.annotations.push_back(b);
    }
    out.push_back(std::move(sub));
  }
  return out;
}

struct FoldData {
  Corpus train;  // sorted by id
  Corpus dev;
  Corpus test;
  std::vector<SentenceId> sentences;  // all training sentences, sorted
  std::map<SentenceId, const Sentence*> text;
  std::map<std::string, Domain> domain_of;
};

FoldData PrepareFold(const Corpus& corpus, const Fold& fold) {
  FoldData data;
  data.train = SelectDocuments(corpus, fold.train);
  std::sort(data.train.begin(), data.train.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  data.dev = SelectDocuments(corpus, fold.dev);
  data.test = SelectDocuments(corpus, fold.test);
  for (const Document& doc : data.train) {
    data.domain_of[doc.id] = doc.domain;
    for (int s = 0; s < static_cast<int>(doc.sentences.size()); ++s) {
      if (doc.sentences[s].size() == 0) continue;
      SentenceId id{doc.id, s};
      data.text[id] = &doc.sentences[s];
      data.sentences.push_back(id);
    }
  }
  std::sort(data.sentences.begin(), data.sentences.end());
  return data;
}

// Round-robin over domains (in domain order) of per-domain shuffled
// sentences until `size` are taken.
std::vector<SentenceId> StratifiedSeed(const FoldData& data, int size,
                                       Rng& rng) {
  std::array<std::vector<SentenceId>, kNumDomains> by_domain;
  for (const SentenceId& id : data.sentences) {
    by_domain[static_cast<int>(data.domain_of.at(id.document))].push_back(id);
  }
  for (auto& v : by_domain) rng.Shuffle(v);
  std::vector<SentenceId> out;
  std::array<std::size_t, kNumDomains> next{};
  while (static_cast<int>(out.size()) < size) {
    for (int d = 0; d < kNumDomains && static_cast<int>(out.size()) < size;
         ++d) {
      if (next[d] < by_domain[d].size()) out.push_back(by_domain[d][next[d]++]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::array<int, kNumDomains> CountDomains(const FoldData& data,
                                          const auto& ids) {
  std::array<int, kNumDomains> counts{};
  for (const SentenceId& id : ids) {
    ++counts[static_cast<int>(data.domain_of.at(id.document))];
  }
  return counts;
}

[[noreturn]] void Rethrow(const Error& e, const std::string& where) {
  throw Error(where + ": " + e.what(), e.code());
}

FoldTrace RunFold(const FoldData& data, int fold_index,
                  const std::vector<SentenceId>& seed_set,
                  const FeatureExtractor& extractor,
                  const TrainConfig& train_config, const ALConfig& config,
                  Strategy strategy, Execution exec) {
  FoldTrace trace;
  trace.fold = fold_index;
  trace.strategy = strategy;
  Rng rng = Rng::Stream(config.seed, "sampling:" +
                                         std::string(StrategyName(strategy)) +
                                         ":" + std::to_string(fold_index));
  const int n = static_cast<int>(data.sentences.size());
  std::set<SentenceId> labelled(seed_set.begin(), seed_set.end());
  std::vector<SentenceId> added = seed_set;

  for (int it = 1; it <= config.iterations; ++it) {
    const std::string where = "fold " + std::to_string(fold_index) + ", " +
                              std::string(StrategyName(strategy)) +
                              " iteration " + std::to_string(it);
    ALIteration row;
    row.iteration = it;
    row.fraction = NominalFraction(config, it);
    row.labelled = static_cast<int>(labelled.size());
    row.sampled = added;
    row.sampled_per_domain = CountDomains(data, added);
    row.labelled_per_domain = CountDomains(data, labelled);

    CrfModel model;
    try {
      const Corpus train = SubsetSentences(data.train, labelled);
      model = Train(train, data.dev, extractor, train_config).model;
      row.dev_f1 = data.dev.empty() ? 0.0 : SpanF1Of(model, data.dev);
      row.test_f1 = SpanF1Of(model, data.test);
    } catch (const Error& e) {
      Rethrow(e, where);
    }
    trace.iterations.push_back(std::move(row));
    if (it == config.iterations) break;

    const int target = LabelledSize(config, n, it + 1);
    const int batch = target - static_cast<int>(labelled.size());
    added.clear();
    if (batch <= 0) continue;
    std::vector<SentenceId> pool;
    std::vector<const Sentence*> text;
    for (const SentenceId& id : data.sentences) {
      if (labelled.count(id)) continue;
      pool.push_back(id);
      text.push_back(data.text.at(id));
    }
    std::vector<double> scores;
    if (strategy == Strategy::kMnlp) scores = ScorePool(model, text, exec);
    added = SelectBatch(pool, scores, strategy, batch, rng);
    labelled.insert(added.begin(), added.end());
  }
  return trace;
}

std::vector<BudgetSummary> Summarize(const std::vector<FoldTrace>& folds) {
  std::vector<BudgetSummary> out;
  if (folds.empty()) return out;
  const std::size_t iterations = folds.front().iterations.size();
  for (std::size_t i = 0; i < iterations; ++i) {
    BudgetSummary b;
    b.iteration = folds.front().iterations[i].iteration;
    b.fraction = folds.front().iterations[i].fraction;
    std::vector<double> dev, test;
    for (const FoldTrace& f : folds) {
      const ALIteration& row = f.iterations[i];
      dev.push_back(row.dev_f1);
      test.push_back(row.test_f1);
      for (int d = 0; d < kNumDomains; ++d) {
        b.labelled_per_domain[d] +=
            static_cast<double>(row.labelled_per_domain[d]) / folds.size();
      }
    }
    b.dev_f1 = ComputeMeanStd(dev);
    b.test_f1 = ComputeMeanStd(test);
    out.push_back(b);
  }
  return out;
}

}  // namespace

ALExperiment RunAlExperiment(const Corpus& corpus, const FoldPlan& plan,
                             const FeatureExtractor& extractor,
                             const TrainConfig& train_config,
                             const ALConfig& al_config,
                             std::span<const Strategy> strategies,
                             Execution exec) {
  al_config.Validate();
  if (al_config.folds > static_cast<int>(plan.folds.size())) {
    throw ValidationError("active learning asks for " +
                          std::to_string(al_config.folds) +
                          " folds, the plan has " +
                          std::to_string(plan.folds.size()));
  }
  ALExperiment result;
  for (Strategy s : strategies) {
    result.strategies.push_back(StrategyTrace{s, {}, {}});
  }
  for (int f = 0; f < al_config.folds; ++f) {
    const FoldData data = PrepareFold(corpus, plan.folds[f]);
    const int n = static_cast<int>(data.sentences.size());
    if (n == 0) {
      throw ValidationError("fold " + std::to_string(f) +
                            ": no training sentences");
    }
    for (int it = 2; it <= al_config.iterations; ++it) {
      if (LabelledSize(al_config, n, it) <= LabelledSize(al_config, n, it - 1) &&
          LabelledSize(al_config, n, it - 1) < n) {
        throw ValidationError("fold " + std::to_string(f) + ": pool of " +
                              std::to_string(n) +
                              " sentences too small for the batch fraction");
      }
    }
    Rng seed_rng =
        Rng::Stream(al_config.seed, "seed-set:" + std::to_string(f));
    const std::vector<SentenceId> seed_set =
        StratifiedSeed(data, LabelledSize(al_config, n, 1), seed_rng);

    try {
      std::set<SentenceId> all(data.sentences.begin(), data.sentences.end());
      const CrfModel full =
          Train(SubsetSentences(data.train, all), data.dev, extractor,
                train_config)
              .model;
      result.full_test_f1.push_back(SpanF1Of(full, data.test));
    } catch (const Error& e) {
      Rethrow(e, "fold " + std::to_string(f) + ", full data");
    }
    for (StrategyTrace& st : result.strategies) {
      st.folds.push_back(RunFold(data, f, seed_set, extractor, train_config,
                                 al_config, st.strategy, exec));
    }
  }
  result.full = ComputeMeanStd(result.full_test_f1);
  for (StrategyTrace& st : result.strategies) st.budgets = Summarize(st.folds);
  return result;
}

std::optional<double> ParityBudget(const StrategyTrace& trace,
                                   double threshold) {
  for (const BudgetSummary& b : trace.budgets) {
    if (b.test_f1.mean >= threshold) return b.fraction;
  }
  return std::nullopt;
}

std::string AlTraceCsv(const ALExperiment& experiment) {
  std::ostringstream out;
  out << "iteration,fraction,labelled,strategy,fold,dev_f1,test_f1";
  for (Domain d : kAllDomains) out << ",sampled_" << DomainCode(d);
  for (Domain d : kAllDomains) out << ",labelled_" << DomainCode(d);
  out << '\n';
  for (const StrategyTrace& st : experiment.strategies) {
    for (const FoldTrace& f : st.folds) {
      for (const ALIteration& row : f.iterations) {
        out << row.iteration << ',' << FormatFixed(row.fraction, 4) << ','
            << row.labelled << ',' << StrategyName(st.strategy) << ','
            << f.fold << ',' << FormatFixed(row.dev_f1, 6) << ','
            << FormatFixed(row.test_f1, 6);
        for (int c : row.sampled_per_domain) out << ',' << c;
        for (int c : row.labelled_per_domain) out << ',' << c;
        out << '\n';
      }
    }
  }
  return out.str();
}

std::string AlSummaryCsv(const ALExperiment& experiment) {
  std::ostringstream out;
  out << "strategy,iteration,fraction,dev_f1_mean,dev_f1_std,test_f1_mean,"
         "test_f1_std";
  for (Domain d : kAllDomains) out << ",labelled_" << DomainCode(d);
  out << '\n';
  for (const StrategyTrace& st : experiment.strategies) {
    for (const BudgetSummary& b : st.budgets) {
      out << StrategyName(st.strategy) << ',' << b.iteration << ','
          << FormatFixed(b.fraction, 4) << ','
          << FormatFixed(b.dev_f1.mean, 6) << ','
          << FormatFixed(b.dev_f1.std, 6) << ','
          << FormatFixed(b.test_f1.mean, 6) << ','
          << FormatFixed(b.test_f1.std, 6);
      for (double c : b.labelled_per_domain) out << ',' << FormatFixed(c, 2);
      out << '\n';
    }
  }
  out << "full,,1.0000,,," << FormatFixed(experiment.full.mean, 6) << ','
      << FormatFixed(experiment.full.std, 6);
  for (int d = 0; d < kNumDomains; ++d) out << ',';
  out << '\n';
  for (const StrategyTrace& st : experiment.strategies) {
    const auto parity =
        ParityBudget(st, experiment.full.mean - experiment.full.std);
    out << "parity_" << StrategyName(st.strategy) << ",,"
        << (parity ? FormatFixed(*parity, 4) : std::string("none"))
        << ",,,,";
    for (int d = 0; d < kNumDomains; ++d) out << ',';
    out << '\n';
  }
  return out.str();
}

}  // namespace sciconcept
