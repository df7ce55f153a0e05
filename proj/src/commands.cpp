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

#include "sciconcept/commands.hpp"

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sciconcept/error.hpp"
#include "sciconcept/io.hpp"
#include "sciconcept/metrics.hpp"
#include "sciconcept/plot.hpp"
#include "sciconcept/stats.hpp"
#include "sciconcept/synth.hpp"
#include "sciconcept/text.hpp"

namespace sciconcept {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Config.

namespace {

template <typename T>
T Get(const json& j, const std::string& key, const std::string& source) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw UsageError(source + ": bad value for '" + key + "'");
  }
}

void CheckKeys(const json& j, std::initializer_list<std::string_view> keys,
               const std::string& where) {
  if (!j.is_object()) throw UsageError(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw UsageError(where + ": unknown key '" + k + "'");
    }
  }
}

std::vector<Strategy> ParseStrategies(const json& j, const std::string& src) {
  std::vector<Strategy> out;
  for (const auto& name : Get<std::vector<std::string>>(j, "strategies", src)) {
    const auto s = ParseStrategy(name);
    if (!s) throw UsageError(src + ": unknown strategy '" + name + "'");
    out.push_back(*s);
  }
  return out;
}

}  // namespace

void MergeConfigJson(RunConfig& c, std::string_view text,
                     const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(source + ": " + e.what());
  }
  CheckKeys(j,
            {"corpus", "format", "dev", "seed", "folds", "split", "train", "al",
             "cv", "resources", "model", "out", "threads", "quiet", "input",
             "input_b", "synth", "correlate"},
            source);
  const std::string& s = source;
  if (j.contains("corpus")) {
    c.corpus = j["corpus"].is_string()
                   ? std::vector<std::string>{j["corpus"].get<std::string>()}
                   : Get<std::vector<std::string>>(j["corpus"], "corpus", s);
  }
  if (j.contains("format")) c.format = Get<std::string>(j["format"], "format", s);
  if (j.contains("dev")) c.dev = Get<std::string>(j["dev"], "dev", s);
  if (j.contains("seed")) c.seed = Get<std::uint64_t>(j["seed"], "seed", s);
  if (j.contains("folds")) c.folds = Get<int>(j["folds"], "folds", s);
  if (j.contains("model")) c.model = Get<std::string>(j["model"], "model", s);
  if (j.contains("out")) c.out = Get<std::string>(j["out"], "out", s);
  if (j.contains("threads")) c.threads = Get<int>(j["threads"], "threads", s);
  if (j.contains("quiet")) c.quiet = Get<bool>(j["quiet"], "quiet", s);
  if (j.contains("input")) c.input = Get<std::string>(j["input"], "input", s);
  if (j.contains("input_b")) {
    c.input_b = Get<std::string>(j["input_b"], "input_b", s);
  }
  if (j.contains("split")) {
    const json& x = j["split"];
    CheckKeys(x, {"train", "dev", "test"}, s + ": split");
    if (x.contains("train")) c.split.train = Get<int>(x["train"], "train", s);
    if (x.contains("dev")) c.split.dev = Get<int>(x["dev"], "dev", s);
    if (x.contains("test")) c.split.test = Get<int>(x["test"], "test", s);
  }
  if (j.contains("train")) {
    const json& x = j["train"];
    CheckKeys(x,
              {"l2_lambda", "max_epochs", "tolerance", "lbfgs_memory",
               "min_feature_count", "early_stopping", "constrained"},
              s + ": train");
    TrainConfig& t = c.train;
    if (x.contains("l2_lambda")) t.l2_lambda = Get<double>(x["l2_lambda"], "l2_lambda", s);
    if (x.contains("max_epochs")) t.max_epochs = Get<int>(x["max_epochs"], "max_epochs", s);
    if (x.contains("tolerance")) t.tolerance = Get<double>(x["tolerance"], "tolerance", s);
    if (x.contains("lbfgs_memory")) {
      t.lbfgs_memory = Get<int>(x["lbfgs_memory"], "lbfgs_memory", s);
    }
    if (x.contains("min_feature_count")) {
      t.min_feature_count =
          Get<int>(x["min_feature_count"], "min_feature_count", s);
    }
    if (x.contains("early_stopping")) {
      t.early_stopping = Get<bool>(x["early_stopping"], "early_stopping", s);
    }
    if (x.contains("constrained")) {
      t.constrained = Get<bool>(x["constrained"], "constrained", s);
    }
  }
  if (j.contains("al")) {
    const json& x = j["al"];
    CheckKeys(x,
              {"strategies", "batch_fraction", "iterations", "seed_fraction",
               "folds"},
              s + ": al");
    ALConfig& a = c.al;
    if (x.contains("strategies")) c.strategies = ParseStrategies(x["strategies"], s);
    if (x.contains("batch_fraction")) {
      a.batch_fraction = Get<double>(x["batch_fraction"], "batch_fraction", s);
    }
    if (x.contains("iterations")) a.iterations = Get<int>(x["iterations"], "iterations", s);
    if (x.contains("seed_fraction")) {
      a.seed_fraction = Get<double>(x["seed_fraction"], "seed_fraction", s);
    }
    if (x.contains("folds")) a.folds = Get<int>(x["folds"], "folds", s);
  }
  if (j.contains("cv")) {
    const json& x = j["cv"];
    CheckKeys(x, {"lambda_grid", "cross_domain"}, s + ": cv");
    if (x.contains("lambda_grid")) {
      c.lambda_grid = Get<std::vector<double>>(x["lambda_grid"], "lambda_grid", s);
    }
    if (x.contains("cross_domain")) {
      c.cross_domain = Get<bool>(x["cross_domain"], "cross_domain", s);
    }
  }
  if (j.contains("resources")) {
    const json& x = j["resources"];
    CheckKeys(x, {"gazetteers", "clusters"}, s + ": resources");
    if (x.contains("gazetteers")) {
      c.gazetteers = Get<std::vector<std::string>>(x["gazetteers"], "gazetteers", s);
    }
    if (x.contains("clusters")) c.clusters = Get<std::string>(x["clusters"], "clusters", s);
  }
  if (j.contains("synth")) {
    const json& x = j["synth"];
    CheckKeys(x, {"kind", "sentences"}, s + ": synth");
    if (x.contains("kind")) c.synth_kind = Get<std::string>(x["kind"], "kind", s);
    if (x.contains("sentences")) {
      c.synth_sentences = Get<int>(x["sentences"], "sentences", s);
    }
  }
  if (j.contains("correlate")) {
    const json& x = j["correlate"];
    CheckKeys(x, {"kappa_row", "count_row"}, s + ": correlate");
    if (x.contains("kappa_row")) c.kappa_row = Get<std::string>(x["kappa_row"], "kappa_row", s);
    if (x.contains("count_row")) c.count_row = Get<std::string>(x["count_row"], "count_row", s);
  }
}

std::string EffectiveConfigJson(const RunConfig& c) {
  json j;
  j["corpus"] = c.corpus;
  j["format"] = c.format;
  j["dev"] = c.dev;
  j["seed"] = c.seed;
  j["folds"] = c.folds;
  j["split"] = {{"train", c.split.train}, {"dev", c.split.dev},
                {"test", c.split.test}};
  j["train"] = {{"l2_lambda", c.train.l2_lambda},
                {"max_epochs", c.train.max_epochs},
                {"tolerance", c.train.tolerance},
                {"lbfgs_memory", c.train.lbfgs_memory},
                {"min_feature_count", c.train.min_feature_count},
                {"early_stopping", c.train.early_stopping},
                {"constrained", c.train.constrained}};
  std::vector<std::string> strategies;
  for (Strategy s : c.strategies) strategies.emplace_back(StrategyName(s));
  j["al"] = {{"strategies", strategies},
             {"batch_fraction", c.al.batch_fraction},
             {"iterations", c.al.iterations},
             {"seed_fraction", c.al.seed_fraction},
             {"folds", c.al.folds}};
  j["cv"] = {{"lambda_grid", c.lambda_grid}, {"cross_domain", c.cross_domain}};
  j["resources"] = {{"gazetteers", c.gazetteers}, {"clusters", c.clusters}};
  j["model"] = c.model;
  j["out"] = c.out;
  j["threads"] = c.threads;
  j["quiet"] = c.quiet;
  j["input"] = c.input;
  j["input_b"] = c.input_b;
  j["synth"] = {{"kind", c.synth_kind}, {"sentences", c.synth_sentences}};
  j["correlate"] = {{"kappa_row", c.kappa_row}, {"count_row", c.count_row}};
  return j.dump(2) + "\n";
}

void PropagateSeed(RunConfig& config) {
  config.train.seed = config.seed;
  config.al.seed = config.seed;
}

// ---------------------------------------------------------------------------
// Shared plumbing.

namespace {

void Log(const RunConfig& c, const std::string& msg) {
  if (!c.quiet) std::cerr << msg << '\n';
}

CorpusFormat FormatFor(const RunConfig& c, const fs::path& path) {
  return c.format == "auto" ? GuessCorpusFormat(path)
                            : ParseCorpusFormat(c.format);
}

Corpus LoadCorpora(const RunConfig& c) {
  if (c.corpus.empty()) throw UsageError("no --corpus given");
  Corpus all;
  std::set<std::string> ids;
  for (const std::string& path : c.corpus) {
    for (Document& d : LoadCorpus(path, FormatFor(c, path))) {
      if (!ids.insert(d.id).second) {
        throw ValidationError(path + ": duplicate document id '" + d.id + "'");
      }
      all.push_back(std::move(d));
    }
  }
  return all;
}

FeatureExtractor MakeExtractor(const RunConfig& c) {
  Gazetteer gazetteer;
  for (const std::string& path : c.gazetteers) gazetteer.LoadFile(path);
  ClusterMap clusters;
  if (!c.clusters.empty()) clusters.LoadFile(c.clusters);
  return FeatureExtractor(std::move(gazetteer), std::move(clusters));
}

fs::path PrepareOut(const RunConfig& c, std::string_view command) {
  const fs::path out(c.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ValidationError(c.out + ": " + ec.message());
  json echo = json::parse(EffectiveConfigJson(c));
  echo["command"] = std::string(command);
  WriteFileAtomic(out / "effective_config.json", echo.dump(2) + "\n");
  if (c.threads > 0) omp_set_num_threads(c.threads);
  return out;
}

fs::path ModelPath(const RunConfig& c, bool for_writing) {
  if (!c.model.empty()) return c.model;
  if (for_writing) return fs::path(c.out) / "model.json";
  throw UsageError("no --model given");
}

// Tags the sentences of `corpus` and replaces its annotations.
Corpus TagWith(const CrfModel& model, Corpus corpus) {
  const auto tags = model.TagCorpus(corpus);
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    corpus[d].annotations.clear();
    for (std::size_t s = 0; s < tags[d].size(); ++s) {
      for (const SpanAnnotation& a :
           DecodeBilou(tags[d][s], static_cast<int>(s))) {
        corpus[d].annotations.push_back(a);
      }
    }
    NormalizeDocument(corpus[d]);
  }
  return corpus;
}

std::string Fx(double v) { return FormatFixed(v, 6); }

}  // namespace

// ---------------------------------------------------------------------------
// stats, train, tag, eval.

int CmdStats(const RunConfig& c, std::ostream& out) {
  const fs::path dir = PrepareOut(c, "stats");
  const Corpus corpus = c.corpus.empty() ? Corpus{} : LoadCorpora(c);
  const std::string csv = CorpusStatsCsv(ComputeCorpusStats(corpus));
  WriteFileAtomic(dir / "stats.csv", csv);
  out << csv;
  return 0;
}

int CmdTrain(const RunConfig& c, std::ostream& out) {
  const fs::path dir = PrepareOut(c, "train");
  const Corpus train = LoadCorpora(c);
  const Corpus dev = c.dev.empty() ? Corpus{} : LoadCorpus(c.dev, FormatFor(c, c.dev));
  Log(c, "training on " + std::to_string(train.size()) + " documents");
  const TrainedModel result = Train(train, dev, MakeExtractor(c), c.train);
  const fs::path path = ModelPath(c, true);
  SaveModel(path, result.model);

  std::ostringstream log;
  log << "epoch,loss,dev_f1\n";
  for (std::size_t i = 0; i < result.report.loss.size(); ++i) {
    log << i + 1 << ',' << FormatFixed(result.report.loss[i], 6) << ','
        << (i < result.report.dev_f1.size() ? Fx(result.report.dev_f1[i]) : "");
    log << '\n';
  }
  WriteFileAtomic(dir / "train_log.csv", log.str());
  out << "model " << path.string() << " hash " << ModelHash(result.model)
      << " features " << result.model.index().size() << " epochs "
      << result.report.epochs << " best_epoch " << result.report.best_epoch
      << '\n';
  return 0;
}

int CmdTag(const RunConfig& c, std::ostream& out) {
  if (c.input.empty()) throw UsageError("tag needs --input");
  const fs::path dir = PrepareOut(c, "tag");
  const CrfModel model = LoadModel(ModelPath(c, false));
  const CorpusFormat format = FormatFor(c, c.input);
  const Corpus tagged = TagWith(model, LoadCorpus(c.input, format));
  const fs::path path =
      dir / (format == CorpusFormat::kConll ? "tagged.conll" : "tagged.jsonl");
  SaveCorpus(path, tagged, format);
  long spans = 0;
  for (const Document& d : tagged) spans += static_cast<long>(d.annotations.size());
  out << "tagged " << tagged.size() << " documents, " << spans << " spans -> "
      << path.string() << '\n';
  return 0;
}

int CmdEval(const RunConfig& c, std::ostream& out) {
  const fs::path dir = PrepareOut(c, "eval");
  const Corpus gold = LoadCorpora(c);
  Corpus pred;
  if (!c.input.empty()) {
    pred = LoadCorpus(c.input, FormatFor(c, c.input));
  } else {
    pred = TagWith(LoadModel(ModelPath(c, false)), gold);
  }
  std::map<std::string, const Document*> by_id;
  for (const Document& d : pred) by_id[d.id] = &d;
  std::vector<std::vector<TagSequence>> tags;
  for (const Document& g : gold) {
    const auto it = by_id.find(g.id);
    if (it == by_id.end()) {
      throw ValidationError("predictions lack document '" + g.id + "'");
    }
    const Document& p = *it->second;
    if (p.sentences.size() != g.sentences.size()) {
      throw ValidationError("document '" + g.id + "': sentence count differs");
    }
    for (std::size_t s = 0; s < g.sentences.size(); ++s) {
      if (p.sentences[s].size() != g.sentences[s].size()) {
        throw ValidationError("document '" + g.id + "' sentence " +
                              std::to_string(s) + ": token count differs");
      }
    }
    tags.push_back(DocumentTags(p));
  }
  if (by_id.size() != gold.size()) {
    throw ValidationError("predictions contain documents not in the gold corpus");
  }
  const EvalReport report = Evaluate(gold, tags);
  WriteFileAtomic(dir / "eval.csv", EvalReportCsv(report));
  WriteFileAtomic(dir / "confusion.csv", ConfusionCsv(report.confusion, false));
  out << EvalReportTable(report);
  return 0;
}

// ---------------------------------------------------------------------------
// cv.

namespace {

struct Tuned {
  CrfModel model;
  double lambda = 0.0;
  double dev_f1 = 0.0;
};

// Trains one model per grid value and keeps the best dev F1 (first on ties).
Tuned TrainTuned(const Corpus& train, const Corpus& dev,
                 const FeatureExtractor& extractor, const RunConfig& c) {
  const FeatureIndex index =
      BuildFeatureIndex(train, extractor, c.train.min_feature_count);
  std::vector<double> grid = c.lambda_grid;
  if (grid.empty() || dev.empty()) grid = {c.train.l2_lambda};
  Tuned best;
  bool have = false;
  for (double lambda : grid) {
    TrainConfig tc = c.train;
    tc.l2_lambda = lambda;
    TrainedModel m = Train(train, dev, index, extractor, tc);
    const double f1 = dev.empty() ? 0.0 : SpanF1Of(m.model, dev);
    if (!have || f1 > best.dev_f1) {
      best = Tuned{std::move(m.model), lambda, f1};
      have = true;
    }
  }
  return best;
}

void AppendReportRows(std::ostream& out, const std::string& prefix,
                      const EvalReport& r) {
  for (Concept k : kAllConcepts) {
    const SpanCounts& s = r.of(k);
    out << prefix << ConceptName(k) << ',' << Fx(s.precision()) << ','
        << Fx(s.recall()) << ',' << Fx(s.f1()) << ',' << s.support() << '\n';
  }
  out << prefix << "Overall," << Fx(r.overall.precision()) << ','
      << Fx(r.overall.recall()) << ',' << Fx(r.overall.f1()) << ','
      << r.overall.support() << '\n';
}

EvalReport EvalModel(const CrfModel& model, const Corpus& gold) {
  return Evaluate(gold, model.TagCorpus(gold));
}

}  // namespace

int CmdCv(const RunConfig& c, std::ostream& out) {
  const fs::path dir = PrepareOut(c, "cv");
  const Corpus corpus = LoadCorpora(c);
  const FeatureExtractor extractor = MakeExtractor(c);
  const FoldPlan plan = MakeFolds(corpus, c.folds, c.split, c.seed);

  std::ostringstream folds_csv;
  folds_csv << "fold,lambda,label,precision,recall,f1,support\n";
  std::array<std::vector<double>, kNumConcepts + 1> f1s;
  // [train domain][test domain], plus the domain-independent row.
  std::array<std::array<std::vector<double>, kNumDomains>, kNumDomains + 1>
      matrix;
  std::vector<double> own_domain;  // mean diagonal per fold
  std::ostringstream plan_csv;
  plan_csv << "fold,split,document\n";

  for (int f = 0; f < plan.k; ++f) {
    const Fold& fold = plan.folds[f];
    for (const auto& [name, ids] :
         {std::pair{"train", &fold.train}, std::pair{"dev", &fold.dev},
          std::pair{"test", &fold.test}}) {
      for (const std::string& id : *ids) {
        plan_csv << f << ',' << name << ',' << id << '\n';
      }
    }
    try {
      const Corpus train = SelectDocuments(corpus, fold.train);
      const Corpus dev = SelectDocuments(corpus, fold.dev);
      const Corpus test = SelectDocuments(corpus, fold.test);
      Log(c, "fold " + std::to_string(f) + ": " +
                 std::to_string(train.size()) + "/" +
                 std::to_string(dev.size()) + "/" +
                 std::to_string(test.size()) + " documents");
      const Tuned tuned = TrainTuned(train, dev, extractor, c);
      const EvalReport report = EvalModel(tuned.model, test);
      AppendReportRows(folds_csv,
                       std::to_string(f) + "," + FormatFixed(tuned.lambda, 4) +
                           ",",
                       report);
      for (int k = 0; k < kNumConcepts; ++k) {
        f1s[k].push_back(report.per_concept[k].f1());
      }
      f1s[kNumConcepts].push_back(report.overall.f1());

      if (c.cross_domain) {
        std::array<Corpus, kNumDomains> test_by_domain;
        for (Domain d : kAllDomains) {
          test_by_domain[static_cast<int>(d)] = FilterDomain(test, d);
        }
        for (int t = 0; t < kNumDomains; ++t) {
          if (test_by_domain[t].empty()) continue;
          matrix[kNumDomains][t].push_back(
              SpanF1Of(tuned.model, test_by_domain[t]));
        }
        double diagonal = 0.0;
        int domains = 0;
        for (Domain d : kAllDomains) {
          const int di = static_cast<int>(d);
          const Corpus dtrain = FilterDomain(train, d);
          if (dtrain.empty()) continue;
          const Tuned specific =
              TrainTuned(dtrain, FilterDomain(dev, d), extractor, c);
          for (int t = 0; t < kNumDomains; ++t) {
            if (test_by_domain[t].empty()) continue;
            const double f1 = SpanF1Of(specific.model, test_by_domain[t]);
            matrix[di][t].push_back(f1);
            if (t == di) {
              diagonal += f1;
              ++domains;
            }
          }
        }
        if (domains > 0) own_domain.push_back(diagonal / domains);
      }
    } catch (const Error& e) {
      throw Error("fold " + std::to_string(f) + ": " + e.what(), e.code());
    }
  }

  std::ostringstream summary;
  summary << "label,f1_mean,f1_std\n";
  for (int k = 0; k <= kNumConcepts; ++k) {
    const MeanStd m = ComputeMeanStd(f1s[k]);
    summary << (k < kNumConcepts ? std::string(ConceptName(kAllConcepts[k]))
                                 : std::string("Overall"))
            << ',' << Fx(m.mean) << ',' << Fx(m.std) << '\n';
  }
  WriteFileAtomic(dir / "cv_folds.csv", folds_csv.str());
  WriteFileAtomic(dir / "cv_summary.csv", summary.str());
  WriteFileAtomic(dir / "fold_plan.csv", plan_csv.str());
  const MeanStd overall = ComputeMeanStd(f1s[kNumConcepts]);
  out << "overall span F1 " << FormatFixed(overall.mean, 4) << " +- "
      << FormatFixed(overall.std, 4) << " over " << plan.k << " folds\n";

  if (c.cross_domain) {
    std::ostringstream m;
    m << "train\\test";
    for (Domain d : kAllDomains) m << ',' << DomainCode(d);
    m << '\n';
    for (int r = 0; r <= kNumDomains; ++r) {
      m << (r < kNumDomains ? std::string(DomainCode(kAllDomains[r]))
                            : std::string("independent"));
      for (int t = 0; t < kNumDomains; ++t) {
        m << ',' << (matrix[r][t].empty()
                         ? std::string("")
                         : Fx(ComputeMeanStd(matrix[r][t]).mean));
      }
      m << '\n';
    }
    WriteFileAtomic(dir / "cross_domain.csv", m.str());
    const MeanStd own = ComputeMeanStd(own_domain);
    std::ostringstream cmp;
    cmp << "model,f1_mean,f1_std\n"
        << "independent," << Fx(overall.mean) << ',' << Fx(overall.std) << '\n'
        << "specific_own_domain," << Fx(own.mean) << ',' << Fx(own.std) << '\n';
    WriteFileAtomic(dir / "cv_comparison.csv", cmp.str());
    out << "domain-specific own-domain F1 " << FormatFixed(own.mean, 4)
        << " +- " << FormatFixed(own.std, 4) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// al, plot.

int CmdAl(const RunConfig& c, std::ostream& out) {
  const fs::path dir = PrepareOut(c, "al");
  const Corpus corpus = LoadCorpora(c);
  const FoldPlan plan =
      MakeFolds(corpus, std::max(c.folds, c.al.folds), c.split, c.seed);
  ALConfig al = c.al;
  al.seed = c.seed;
  const ALExperiment exp = RunAlExperiment(corpus, plan, MakeExtractor(c),
                                           c.train, al, c.strategies);
  WriteFileAtomic(dir / "al_trace.csv", AlTraceCsv(exp));
  WriteFileAtomic(dir / "al_summary.csv", AlSummaryCsv(exp));
  WriteFileAtomic(dir / "learning_curve.svg", LearningCurveSvg(exp));
  out << "full-data test F1 " << FormatFixed(exp.full.mean, 4) << " +- "
      << FormatFixed(exp.full.std, 4) << '\n';
  for (const StrategyTrace& st : exp.strategies) {
    const auto parity = ParityBudget(st, exp.full.mean - exp.full.std);
    out << StrategyName(st.strategy) << " parity budget "
        << (parity ? FormatFixed(*parity * 100.0, 0) + "%"
                   : std::string("not reached"))
        << '\n';
  }
  return 0;
}

ALExperiment ReadAlSummaryCsv(std::string_view text, const std::string& source) {
  ALExperiment exp;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto num = [&](const std::string& cell) {
    try {
      return std::stod(cell);
    } catch (const std::exception&) {
      throw ParseError(source + ":" + std::to_string(line_no) +
                       ": bad number '" + cell + "'");
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() < 7) {
      throw ParseError(source + ":" + std::to_string(line_no) +
                       ": expected at least 7 columns");
    }
    if (cells[0] == "full") {
      exp.full = {num(cells[5]), num(cells[6])};
      continue;
    }
    const auto strategy = ParseStrategy(cells[0]);
    if (!strategy) continue;  // parity rows
    auto it = std::find_if(exp.strategies.begin(), exp.strategies.end(),
                           [&](const StrategyTrace& t) {
                             return t.strategy == *strategy;
                           });
    if (it == exp.strategies.end()) {
      exp.strategies.push_back(StrategyTrace{*strategy, {}, {}});
      it = exp.strategies.end() - 1;
    }
    BudgetSummary b;
    b.iteration = static_cast<int>(num(cells[1]));
    b.fraction = num(cells[2]);
    b.dev_f1 = {num(cells[3]), num(cells[4])};
    b.test_f1 = {num(cells[5]), num(cells[6])};
    it->budgets.push_back(b);
  }
  return exp;
}

int CmdPlot(const RunConfig& c, std::ostream& out) {
  if (c.input.empty()) throw UsageError("plot needs --input (al_summary.csv)");
  const fs::path dir = PrepareOut(c, "plot");
  const ALExperiment exp = ReadAlSummaryCsv(ReadFile(c.input), c.input);
  WriteFileAtomic(dir / "learning_curve.svg", LearningCurveSvg(exp));
  out << "wrote " << (dir / "learning_curve.svg").string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// kappa.

int CmdKappa(const RunConfig& c, std::ostream& out) {
  if (c.input.empty() || c.input_b.empty()) {
    throw UsageError("kappa needs --input and --input-b");
  }
  const fs::path dir = PrepareOut(c, "kappa");
  const Corpus a = LoadCorpus(c.input, FormatFor(c, c.input));
  const Corpus b = LoadCorpus(c.input_b, FormatFor(c, c.input_b));
  std::map<std::string, const Document*> b_by_id;
  for (const Document& d : b) b_by_id[d.id] = &d;
  if (a.size() != b.size()) {
    throw ValidationError("annotation files hold " + std::to_string(a.size()) +
                          " and " + std::to_string(b.size()) + " documents");
  }
  std::array<std::vector<int>, kNumDomains> la, lb;
  std::vector<int> all_a, all_b;
  for (const Document& da : a) {
    const auto it = b_by_id.find(da.id);
    if (it == b_by_id.end()) {
      throw ValidationError("document '" + da.id + "' missing from " +
                            c.input_b);
    }
    const Document& db = *it->second;
    const auto ta = DocumentTags(da);
    const auto tb = DocumentTags(db);
    for (std::size_t s = 0;
         s < std::max(da.sentences.size(), db.sentences.size()); ++s) {
      const std::string at =
          "document '" + da.id + "' sentence " + std::to_string(s);
      if (s >= da.sentences.size() || s >= db.sentences.size()) {
        throw ValidationError("token misalignment at " + at +
                              ": sentence missing in one file");
      }
      const auto& xa = da.sentences[s].tokens;
      const auto& xb = db.sentences[s].tokens;
      for (std::size_t t = 0; t < std::max(xa.size(), xb.size()); ++t) {
        if (t >= xa.size() || t >= xb.size() || xa[t].text != xb[t].text) {
          throw ValidationError("token misalignment at " + at + " token " +
                                std::to_string(t));
        }
      }
      for (std::size_t t = 0; t < xa.size(); ++t) {
        const int ya = CollapsedLabel(ta[s][t]);
        const int yb = CollapsedLabel(tb[s][t]);
        la[static_cast<int>(da.domain)].push_back(ya);
        lb[static_cast<int>(da.domain)].push_back(yb);
        all_a.push_back(ya);
        all_b.push_back(yb);
      }
    }
  }
  std::ostringstream csv;
  csv << "domain,tokens,observed,expected,kappa\n";
  auto row = [&](const std::string& name, const AgreementReport& r) {
    csv << name << ',' << r.tokens << ',' << Fx(r.observed) << ','
        << Fx(r.expected) << ',' << Fx(r.kappa) << '\n';
  };
  for (Domain d : kAllDomains) {
    const int di = static_cast<int>(d);
    if (la[di].empty()) continue;
    row(std::string(DomainCode(d)), CohensKappaLabels(la[di], lb[di]));
  }
  const AgreementReport overall = CohensKappaLabels(all_a, all_b);
  row("Overall", overall);
  WriteFileAtomic(dir / "kappa.csv", csv.str());
  out << csv.str();
  return 0;
}

// ---------------------------------------------------------------------------
// silver.

namespace {

struct RawAbstract {
  std::string id;
  std::string domain;
  std::string text;
};

std::vector<RawAbstract> ReadAbstracts(const fs::path& path) {
  std::vector<RawAbstract> out;
  const std::string contents = ReadFile(path);
  if (path.extension() == ".jsonl") {
    std::istringstream in(contents);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const std::string where = path.string() + ":" + std::to_string(line_no);
      try {
        const json j = json::parse(line);
        RawAbstract a;
        a.id = j.at("id").get<std::string>();
        a.text = j.at("text").get<std::string>();
        if (j.contains("domain")) a.domain = j["domain"].get<std::string>();
        out.push_back(std::move(a));
      } catch (const json::exception& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
  } else {
    out.push_back(RawAbstract{path.stem().string(), "", contents});
  }
  return out;
}

}  // namespace

int CmdSilver(const RunConfig& c, std::ostream& out) {
  if (c.input.empty()) throw UsageError("silver needs --input (a directory)");
  const fs::path dir = PrepareOut(c, "silver");
  const CrfModel model = LoadModel(ModelPath(c, false));
  const std::string hash = ModelHash(model);
  if (!fs::is_directory(c.input)) {
    throw ValidationError(c.input + ": not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(c.input)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) Log(c, "warning: " + c.input + " holds no files");

  std::string records;
  std::map<std::pair<std::string, std::string>, long> concepts;
  int failed = 0;
  long abstracts = 0;
  for (const fs::path& file : files) {
    try {
      std::string chunk;
      std::map<std::pair<std::string, std::string>, long> found;
      for (const RawAbstract& a : ReadAbstracts(file)) {
        json rec;
        rec["id"] = a.id;
        rec["domain"] = a.domain;
        rec["model_hash"] = hash;
        rec["text"] = a.text;
        json sentences = json::array();
        json spans = json::array();
        for (const TextRange& r : SplitSentences(a.text)) {
          const std::string_view sv =
              std::string_view(a.text).substr(r.start, r.end - r.start);
          Sentence sentence = Tokenize(sv);
          if (sentence.size() == 0) continue;
          const int index = static_cast<int>(sentences.size());
          json toks = json::array();
          for (Token& t : sentence.tokens) {
            t.start += r.start;
            t.end += r.start;
            toks.push_back({t.text, t.start, t.end});
          }
          sentences.push_back({{"start", r.start}, {"end", r.end},
                               {"tokens", toks}});
          const DecodeResult best = model.Decode(sentence);
          for (const SpanAnnotation& s : DecodeBilou(best.tags, index)) {
            const int cs = sentence.tokens[s.start].start;
            const int ce = sentence.tokens[s.end - 1].end;
            const std::string surface = a.text.substr(cs, ce - cs);
            spans.push_back({{"sentence", index},
                             {"start", s.start},
                             {"end", s.end},
                             {"char_start", cs},
                             {"char_end", ce},
                             {"surface", surface},
                             {"concept", ConceptName(s.kind)}});
            ++found[{std::string(ConceptName(s.kind)), ToLowerAscii(surface)}];
          }
        }
        rec["sentences"] = sentences;
        rec["spans"] = spans;
        chunk += rec.dump() + "\n";
        ++abstracts;
      }
      records += chunk;
      for (const auto& [k, v] : found) concepts[k] += v;
    } catch (const std::exception& e) {
      ++failed;
      Log(c, "warning: skipping " + file.string() + ": " + e.what());
    }
  }

  std::vector<std::pair<std::pair<std::string, std::string>, long>> freq(
      concepts.begin(), concepts.end());
  std::stable_sort(freq.begin(), freq.end(), [](const auto& x, const auto& y) {
    return x.second > y.second;
  });
  std::ostringstream csv;
  csv << "concept,surface,count\n";
  for (const auto& [k, v] : freq) {
    std::string surface = k.second;
    if (surface.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : surface) {
        if (ch == '"') quoted += '"';
        quoted += ch;
      }
      surface = quoted + "\"";
    }
    csv << k.first << ',' << surface << ',' << v << '\n';
  }
  WriteFileAtomic(dir / "silver.jsonl", records);
  WriteFileAtomic(dir / "concepts.csv", csv.str());
  out << abstracts << " abstracts, " << concepts.size()
      << " unique concepts, " << failed << " of " << files.size()
      << " files failed\n";
  if (failed * 10 > static_cast<int>(files.size())) {
    return static_cast<int>(ExitCode::kValidation);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// synth, correlate.

int CmdSynth(const RunConfig& c, std::ostream& out) {
  const fs::path dir = PrepareOut(c, "synth");
  Corpus corpus;
  if (c.synth_kind == "stm") {
    corpus = MakeStmFixture(c.seed == 0 ? 2020 : c.seed);
  } else if (c.synth_kind == "separable") {
    corpus = MakeSeparableCorpus(c.synth_sentences, c.seed == 0 ? 7 : c.seed);
  } else if (c.synth_kind == "difficulty") {
    DifficultyOptions options;
    if (c.seed != 0) options.seed = c.seed;
    corpus = MakeDifficultyCorpus(options);
  } else {
    throw UsageError("unknown synthetic corpus '" + c.synth_kind +
                     "' (stm, separable, difficulty)");
  }
  const fs::path path = dir / (c.synth_kind + ".jsonl");
  SaveCorpus(path, corpus, CorpusFormat::kJsonl);
  out << "wrote " << corpus.size() << " documents to " << path.string() << '\n';
  return 0;
}

int CmdCorrelate(const RunConfig& c, std::ostream& out) {
  if (c.input.empty()) throw UsageError("correlate needs --input (a CSV)");
  const fs::path dir = PrepareOut(c, "correlate");
  std::istringstream in(ReadFile(c.input));
  const CorrelationTable table = ComputeCorrelationTable(
      ReadPerDomainCsv(in, c.input), c.kappa_row, c.count_row);
  const std::string csv = CorrelationTableCsv(table);
  WriteFileAtomic(dir / "correlation.csv", csv);
  out << csv;
  return 0;
}

}  // namespace sciconcept
