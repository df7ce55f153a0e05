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

// Acceptance run: one PASS/FAIL line per criterion. With arguments, runs
// only the listed criteria. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sciconcept/active.hpp"
#include "sciconcept/bilou.hpp"
#include "sciconcept/commands.hpp"
#include "sciconcept/crf.hpp"
#include "sciconcept/io.hpp"
#include "sciconcept/metrics.hpp"
#include "sciconcept/model.hpp"
#include "sciconcept/stats.hpp"
#include "sciconcept/synth.hpp"

using namespace sciconcept;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Num(double v, int decimals = 4) { return FormatFixed(v, decimals); }

std::string Sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

fs::path DataDir() { return fs::path(SCICONCEPT_DATA_DIR); }

fs::path Scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sciconcept_acc_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Outcome InferenceOracles() {
  const auto t0 = Clock::now();
  Rng rng(101);
  const int models = 120;
  int bad_viterbi = 0, bad_z = 0, bad_marg = 0;
  double worst_z = 0.0, worst_m = 0.0;
  for (int t = 0; t < models; ++t) {
    const int n = 1 + t % 5;
    const int features = 1 + static_cast<int>(rng.UniformIndex(30));
    const bool constrained = t % 2 == 0;
    const CrfWeights w = oracle::RandomWeights(rng, features, constrained, 1.5);
    const SentenceFeatures x = oracle::RandomFeatures(rng, n, features);
    const oracle::Enumeration e = oracle::Enumerate(w, x);
    const DecodeResult d = ViterbiDecode(w, x);
    if (d.tags != e.best) ++bad_viterbi;
    const double dz = std::abs(LogPartition(w, x) - e.log_z);
    worst_z = std::max(worst_z, dz);
    if (!(dz <= 1e-8)) ++bad_z;
    const Matrix m = PosteriorMarginals(w, x);
    for (int i = 0; i < n; ++i) {
      for (Tag y = 0; y < kNumTags; ++y) {
        const double dm = std::abs(m(i, y) - e.marginals[i][y]);
        worst_m = std::max(worst_m, dm);
        if (!(dm <= 1e-8)) ++bad_marg;
      }
    }
  }
  const double secs = Seconds(t0);
  Outcome o;
  o.pass = bad_viterbi == 0 && bad_z == 0 && bad_marg == 0 && secs < 60.0;
  o.detail = std::to_string(models) + " models, viterbi mismatches " +
             std::to_string(bad_viterbi) + ", max |dlogZ| " +
             Sci(worst_z) + ", max |dmarginal| " +
             Sci(worst_m) + ", " + Num(secs, 1) + "s";
  return o;
}

Outcome GradientCheck() {
  const auto t0 = Clock::now();
  Rng rng(202);
  const int models = 24;
  long coords = 0, bad = 0;
  double worst = 0.0;
  for (int t = 0; t < models; ++t) {
    const int features = 2 + static_cast<int>(rng.UniformIndex(6));
    const bool constrained = t % 2 == 0;
    CrfWeights w = oracle::RandomWeights(rng, features, constrained, 0.5);
    const double lambda = rng.UniformReal(0.0, 0.5);
    std::vector<LabeledSentence> batch;
    const int size = 1 + static_cast<int>(rng.UniformIndex(3));
    for (int b = 0; b < size; ++b) {
      const int n = 1 + static_cast<int>(rng.UniformIndex(5));
      LabeledSentence s;
      s.features = oracle::RandomFeatures(rng, n, features);
      s.gold = EncodeBilou(n, oracle::RandomSpans(rng, n));
      batch.push_back(std::move(s));
    }
    const LossAndGradient lg = NllAndGradient(w, batch, lambda);
    const std::vector<double> x0(w.params().begin(), w.params().end());
    auto loss = [&](const std::vector<double>& x) {
      CrfWeights v = w;
      std::copy(x.begin(), x.end(), v.params().begin());
      return NllAndGradient(v, batch, lambda, Execution::kSerial).loss;
    };
    for (std::size_t i = 0; i < x0.size(); ++i) {
      const double fd = oracle::CentralDifference(loss, x0, i, 1e-5);
      const double g = lg.gradient[i];
      const double rel =
          std::abs(g - fd) / std::max({std::abs(g), std::abs(fd), 1e-3});
      worst = std::max(worst, rel);
      ++coords;
      if (!(rel <= 1e-4)) ++bad;
    }
  }
  const double secs = Seconds(t0);
  Outcome o;
  o.pass = bad == 0 && secs < 60.0;
  o.detail = std::to_string(models) + " models, " + std::to_string(coords) +
             " coordinates, max relative error " + Sci(worst) +
             ", " + Num(secs, 1) + "s";
  return o;
}

Outcome BilouRoundTrip() {
  long sentences = 0, bad = 0;
  const Corpus shipped = LoadCorpus(DataDir() / "stm_fixture.jsonl",
                                    CorpusFormat::kJsonl);
  for (const Document& d : shipped) {
    for (int s = 0; s < static_cast<int>(d.sentences.size()); ++s) {
      const auto gold = SpansOfSentence(d, s);
      const TagSequence tags = EncodeBilou(d.sentences[s].size(), gold);
      ++sentences;
      if (!IsWellFormed(tags) || DecodeBilou(tags, s) != gold) ++bad;
    }
  }
  Rng rng(303);
  int random_bad = 0;
  for (int t = 0; t < 10000; ++t) {
    const int n = 1 + static_cast<int>(rng.UniformIndex(12));
    const auto spans = oracle::RandomSpans(rng, n);
    if (DecodeBilou(EncodeBilou(n, spans)) != spans) ++random_bad;
  }
  long total = 0, decode_bad = 0;
  TagSequence y(4, 0);
  for (;;) {
    const auto a = DecodeBilou(y);
    const auto b = DecodeBilou(y);
    if (a != b || a != oracle::ReferenceRepair(y)) ++decode_bad;
    ++total;
    int pos = 3;
    while (pos >= 0 && ++y[pos] == kNumTags) y[pos--] = 0;
    if (pos < 0) break;
  }
  Outcome o;
  o.pass = bad == 0 && random_bad == 0 && decode_bad == 0 &&
           total == 83521 && sentences > 0;
  o.detail = "shipped sentences " + std::to_string(sentences) + " (" +
             std::to_string(bad) + " bad), random span sets 10000 (" +
             std::to_string(random_bad) + " bad), length-4 sequences " +
             std::to_string(total) + " (" + std::to_string(decode_bad) +
             " bad)";
  return o;
}

Outcome MetricFixtures() {
  const Tag o = kOutsideTag;
  const Tag up = MakeTag(Prefix::kUnit, Concept::kProcess);
  auto span = [](int s, int e, Concept c) { return SpanAnnotation{0, s, e, c}; };
  const DocumentSpans gold = {{"d", {span(0, 2, Concept::kMaterial),
                                     span(3, 4, Concept::kData)}}};
  const DocumentSpans pred = {{"d", {span(0, 2, Concept::kMaterial),
                                     span(5, 6, Concept::kProcess)}}};
  const double f1 = SpanF1(gold, pred).overall.f1();
  const double kappa = CohensKappa({{o, o, up, up}}, {{o, up, up, up}}).kappa;
  const std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> pos, neg;
  for (double v : x) {
    pos.push_back(2.0 * v + 1.0);
    neg.push_back(-3.0 * v + 7.0);
  }
  const double rp = PearsonR(x, pos).r;
  const double rn = PearsonR(x, neg).r;
  Outcome out;
  out.pass = f1 == 0.5 && kappa == 0.5 && std::abs(rp - 1.0) < 1e-12 &&
             std::abs(rn + 1.0) < 1e-12;
  out.detail = "F1 " + Num(f1) + ", kappa " + Num(kappa) + ", R " +
               Num(rp) + " / " + Num(rn);
  return out;
}

Outcome CorpusStatistics() {
  struct Row {
    const char* code;
    int avg_tokens, phrases, unique, process, method, material, data;
  };
  // Published per-domain corpus characteristics.
  const Row rows[] = {
      {"Ast", 382, 791, 663, 241, 19, 296, 235},
      {"Agr", 333, 741, 631, 252, 28, 292, 169},
      {"Eng", 303, 741, 618, 248, 27, 208, 258},
      {"ES", 321, 698, 633, 243, 9, 249, 197},
      {"Bio", 273, 649, 511, 281, 15, 291, 62},
      {"Med", 274, 600, 518, 244, 33, 191, 132},
      {"MS", 282, 574, 493, 178, 27, 231, 138},
      {"CS", 253, 553, 482, 220, 66, 102, 165},
      {"Che", 217, 483, 444, 149, 27, 188, 119},
      {"Mat", 140, 297, 287, 56, 7, 51, 183},
  };
  const fs::path out = Scratch("stats");
  RunConfig c;
  c.corpus = {(DataDir() / "stm_fixture.jsonl").string()};
  c.out = out.string();
  c.quiet = true;
  std::ostringstream sink;
  CmdStats(c, sink);
  std::ifstream csv(out / "stats.csv");
  std::string line;
  std::getline(csv, line);
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  std::map<std::string, std::map<std::string, double>> table;
  while (std::getline(csv, line)) {
    std::stringstream ss(line);
    std::string name, cell;
    std::getline(ss, name, ',');
    for (std::size_t i = 1; std::getline(ss, cell, ','); ++i) {
      if (i < header.size()) table[name][header[i]] = std::stod(cell);
    }
  }
  int mismatches = 0;
  auto expect = [&](const std::string& row, const std::string& col, double v) {
    const auto r = table.find(row);
    if (r == table.end() || !r->second.count(col) ||
        std::abs(r->second.at(col) - v) > 1e-9) {
      ++mismatches;
    }
  };
  int tp = 0, tm = 0, tma = 0, td = 0, tphr = 0;
  for (const Row& r : rows) {
    expect("avg_tokens_per_abstract", r.code, r.avg_tokens);
    expect("phrases", r.code, r.phrases);
    expect("unique_phrases", r.code, r.unique);
    expect("Process", r.code, r.process);
    expect("Method", r.code, r.method);
    expect("Material", r.code, r.material);
    expect("Data", r.code, r.data);
    tp += r.process;
    tm += r.method;
    tma += r.material;
    td += r.data;
    tphr += r.phrases;
  }
  expect("phrases", "Overall", 6127);
  expect("Process", "Overall", 2112);
  expect("Method", "Overall", 258);
  expect("Material", "Overall", 2099);
  expect("Data", "Overall", 1658);
  const bool sums = tphr == 6127 && tp == 2112 && tm == 258 && tma == 2099 &&
                    td == 1658;
  fs::remove_all(out);
  Outcome o;
  o.pass = mismatches == 0 && sums;
  o.detail = std::to_string(mismatches) + " mismatched cells against the " +
             "published table (totals 6127/2112/258/2099/1658)";
  return o;
}

Outcome Reproducibility() {
  // (a) Separable corpus, held-out documents.
  const auto t0 = Clock::now();
  const Corpus sep = MakeSeparableCorpus(1000, 7);
  Corpus train, test;
  for (std::size_t i = 0; i < sep.size(); ++i) {
    (i % 5 == 4 ? test : train).push_back(sep[i]);
  }
  TrainConfig tc;
  tc.l2_lambda = 0.1;
  tc.max_epochs = 100;
  tc.early_stopping = false;
  const CrfModel m = Train(train, {}, FeatureExtractor{}, tc).model;
  const double sep_f1 = SpanF1Of(m, test);
  const double sep_secs = Seconds(t0);
  const bool a = sep_f1 >= 0.95 && sep_secs < 300.0;

  // (b) Domain-independent vs domain-specific models under 5-fold CV.
  const auto t1 = Clock::now();
  const fs::path out = Scratch("cv");
  RunConfig c;
  c.corpus = {(DataDir() / "stm_fixture.jsonl").string()};
  c.out = out.string();
  c.quiet = true;
  c.cross_domain = true;
  c.train.max_epochs = 60;
  PropagateSeed(c);
  std::ostringstream sink;
  CmdCv(c, sink);
  std::ifstream cmp(out / "cv_comparison.csv");
  std::string line;
  std::map<std::string, std::pair<double, double>> rows;
  std::getline(cmp, line);
  while (std::getline(cmp, line)) {
    std::stringstream ss(line);
    std::string name, mean, sd;
    std::getline(ss, name, ',');
    std::getline(ss, mean, ',');
    std::getline(ss, sd, ',');
    rows[name] = {std::stod(mean), std::stod(sd)};
  }
  fs::remove_all(out);
  const auto ind = rows["independent"];
  const auto own = rows["specific_own_domain"];
  const bool b = rows.size() == 2 && ind.first >= own.first;
  Outcome o;
  o.pass = a && b;
  o.detail = "(a) separable held-out F1 " + Num(sep_f1) + " in " +
             Num(sep_secs, 1) + "s; (b) domain-independent F1 " +
             Num(ind.first) + " +- " + Num(ind.second) +
             " vs domain-specific own-domain " + Num(own.first) + " +- " +
             Num(own.second) + " (" + Num(Seconds(t1), 1) + "s)";
  return o;
}

Outcome ActiveLearning() {
  const auto t0 = Clock::now();
  const Corpus corpus = MakeDifficultyCorpus();
  ALConfig al;
  al.seed = 0;
  const FoldPlan plan = MakeFolds(corpus, al.folds, SplitCounts{}, 0);
  TrainConfig tc;
  tc.max_epochs = 40;
  const std::vector<Strategy> both = {Strategy::kMnlp, Strategy::kRandom};
  const ALExperiment ex =
      RunAlExperiment(corpus, plan, FeatureExtractor{}, tc, al, both);
  const StrategyTrace& mnlp = ex.strategies[0];
  const StrategyTrace& rnd = ex.strategies[1];
  int budgets = 0, wins = 0;
  std::string worst;
  double worst_gap = 1.0;
  for (std::size_t i = 0; i < mnlp.budgets.size(); ++i) {
    const double f = mnlp.budgets[i].fraction;
    if (f < 0.2 - 1e-9 || f > 0.6 + 1e-9) continue;
    ++budgets;
    const double gap = mnlp.budgets[i].test_f1.mean - rnd.budgets[i].test_f1.mean;
    wins += gap > 0.0;
    if (gap < worst_gap) {
      worst_gap = gap;
      worst = Num(f * 100.0, 0) + "%";
    }
  }
  const double threshold = ex.full.mean - ex.full.std;
  const auto pm = ParityBudget(mnlp, threshold);
  const auto pr = ParityBudget(rnd, threshold);
  const bool parity = pm && (!pr || *pm < *pr);
  const double secs = Seconds(t0);
  auto show = [](const std::optional<double>& p) {
    return p ? Num(*p * 100.0, 0) + "%" : std::string("not reached");
  };
  Outcome o;
  o.pass = budgets == 11 && wins == budgets && parity && secs < 1800.0;
  o.detail = "MNLP ahead at " + std::to_string(wins) + "/" +
             std::to_string(budgets) + " budgets in [20%, 60%] (smallest gap " +
             Num(worst_gap) + " at " + worst + "); full F1 " +
             Num(ex.full.mean) + " +- " + Num(ex.full.std) +
             "; parity MNLP " + show(pm) + ", random " + show(pr) + "; " +
             Num(secs, 1) + "s";
  return o;
}

Outcome Correlations() {
  std::ifstream in(DataDir() / "table5.csv");
  const auto rows = ReadPerDomainCsv(in, "table5.csv");
  const CorrelationTable t = ComputeCorrelationTable(rows, "kappa", "count");
  // Printed coefficients: row -> (R with kappa, R with count).
  const std::vector<std::tuple<std::string, double, double>> printed = {
      {"kappa", 1.00, -0.02},
      {"count", -0.02, 1.00},
      {"domain_dependent_f1", 0.20, 0.70},
      {"domain_independent_f1", 0.28, 0.76},
      {"active_learning_f1", 0.23, 0.68},
      {"domain_dependent_std", 0.29, 0.28},
      {"domain_independent_std", -0.11, -0.05},
      {"active_learning_std", -0.41, -0.72},
  };
  int cells = 0, ok = 0;
  std::string misses;
  for (const auto& [name, rk, rc] : printed) {
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (t.rows[i].name != name) continue;
      for (const auto& [got, want, label] :
           {std::tuple{t.r_kappa[i], rk, "kappa"},
            std::tuple{t.r_count[i], rc, "count"}}) {
        ++cells;
        if (std::abs(got - want) <= 0.005 + 1e-12) {
          ++ok;
        } else {
          misses += " " + name + "/" + label + " " + Num(got, 3) + " vs " +
                    Num(want, 2) + ";";
        }
      }
    }
  }
  Outcome o;
  o.pass = cells == 16 && ok == cells;
  o.detail = std::to_string(ok) + "/" + std::to_string(cells) +
             " printed coefficients within 0.005" +
             (misses.empty() ? std::string() : "; off:" + misses);
  return o;
}

Outcome Determinism() {
  const std::vector<std::string> cv_files = {"cv_folds.csv", "cv_summary.csv",
                                             "fold_plan.csv",
                                             "cross_domain.csv",
                                             "cv_comparison.csv"};
  const std::vector<std::string> al_files = {"al_trace.csv", "al_summary.csv"};
  const fs::path synth = Scratch("det_data");
  SaveCorpus(synth / "difficulty.jsonl", MakeDifficultyCorpus(),
             CorpusFormat::kJsonl);
  std::vector<std::map<std::string, std::string>> runs;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = Scratch("det_" + std::to_string(run));
    std::ostringstream sink;
    RunConfig cv;
    cv.corpus = {(DataDir() / "stm_fixture.jsonl").string()};
    cv.out = (out / "cv").string();
    cv.quiet = true;
    cv.seed = 42;
    cv.cross_domain = true;
    cv.lambda_grid = {0.1, 1.0};
    cv.train.max_epochs = 15;
    cv.threads = run == 0 ? 1 : 2;
    PropagateSeed(cv);
    CmdCv(cv, sink);
    RunConfig al;
    al.corpus = {(synth / "difficulty.jsonl").string()};
    al.out = (out / "al").string();
    al.quiet = true;
    al.seed = 42;
    al.train.max_epochs = 10;
    al.al.folds = 2;
    al.folds = 2;
    al.al.iterations = 4;
    al.threads = run == 0 ? 1 : 2;
    PropagateSeed(al);
    CmdAl(al, sink);
    std::map<std::string, std::string> files;
    for (const auto& f : cv_files) files["cv/" + f] = ReadFile(out / "cv" / f);
    for (const auto& f : al_files) files["al/" + f] = ReadFile(out / "al" / f);
    runs.push_back(std::move(files));
    fs::remove_all(out);
  }
  fs::remove_all(synth);
  int same = 0;
  std::string differ;
  for (const auto& [name, text] : runs[0]) {
    if (runs[1].at(name) == text && !text.empty()) {
      ++same;
    } else {
      differ += " " + name;
    }
  }
  Outcome o;
  o.pass = same == static_cast<int>(runs[0].size());
  o.detail = std::to_string(same) + "/" + std::to_string(runs[0].size()) +
             " CSV files byte-identical across two runs (1 and 2 threads)" +
             (differ.empty() ? std::string() : "; differ:" + differ);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, InferenceOracles}, {2, GradientCheck},   {3, BilouRoundTrip},
      {4, MetricFixtures},   {5, CorpusStatistics}, {6, Reproducibility},
      {7, ActiveLearning},   {8, Correlations},     {9, Determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    if (!wanted.empty() && !wanted.count(id)) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    failures += !o.pass;
    std::printf("criterion %d: %s  %s\n", id, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
