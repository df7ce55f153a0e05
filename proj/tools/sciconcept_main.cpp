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

// sciconcept: train, evaluate and actively improve a BILOU CRF tagger for
// scientific concepts.

#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "sciconcept/commands.hpp"
#include "sciconcept/error.hpp"
#include "sciconcept/io.hpp"

namespace {

using sciconcept::RunConfig;

// Flag values; only flags given on the command line override the config.
struct Flags {
  std::string config;
  std::vector<std::string> corpus;
  std::string format, dev, model, out, input, input_b, strategy, kind;
  std::string kappa_row, count_row;
  std::optional<std::uint64_t> seed;
  std::optional<int> folds, threads, max_epochs, iterations, sentences;
  std::optional<double> lambda, batch_fraction, seed_fraction;
  std::vector<double> lambda_grid;
  std::vector<std::string> gazetteers;
  std::string clusters;
  bool cross_domain = false;
  bool quiet = false;
};

RunConfig Resolve(const Flags& f) {
  RunConfig c;
  if (!f.config.empty()) {
    sciconcept::MergeConfigJson(c, sciconcept::ReadFile(f.config), f.config);
  }
  if (!f.corpus.empty()) c.corpus = f.corpus;
  if (!f.format.empty()) c.format = f.format;
  if (!f.dev.empty()) c.dev = f.dev;
  if (!f.model.empty()) c.model = f.model;
  if (!f.out.empty()) c.out = f.out;
  if (!f.input.empty()) c.input = f.input;
  if (!f.input_b.empty()) c.input_b = f.input_b;
  if (!f.kind.empty()) c.synth_kind = f.kind;
  if (!f.kappa_row.empty()) c.kappa_row = f.kappa_row;
  if (!f.count_row.empty()) c.count_row = f.count_row;
  if (!f.gazetteers.empty()) c.gazetteers = f.gazetteers;
  if (!f.clusters.empty()) c.clusters = f.clusters;
  if (!f.lambda_grid.empty()) c.lambda_grid = f.lambda_grid;
  if (f.seed) c.seed = *f.seed;
  if (f.folds) {
    c.folds = *f.folds;
    c.al.folds = *f.folds;
  }
  if (f.threads) c.threads = *f.threads;
  if (f.max_epochs) c.train.max_epochs = *f.max_epochs;
  if (f.iterations) c.al.iterations = *f.iterations;
  if (f.sentences) c.synth_sentences = *f.sentences;
  if (f.lambda) c.train.l2_lambda = *f.lambda;
  if (f.batch_fraction) c.al.batch_fraction = *f.batch_fraction;
  if (f.seed_fraction) c.al.seed_fraction = *f.seed_fraction;
  if (f.cross_domain) c.cross_domain = true;
  if (f.quiet) c.quiet = true;
  if (!f.strategy.empty()) {
    if (f.strategy == "both") {
      c.strategies = {sciconcept::Strategy::kMnlp,
                      sciconcept::Strategy::kRandom};
    } else {
      const auto s = sciconcept::ParseStrategy(f.strategy);
      if (!s) throw sciconcept::UsageError("unknown strategy " + f.strategy);
      c.strategies = {*s};
    }
  }
  if (c.format != "auto") sciconcept::ParseCorpusFormat(c.format);
  sciconcept::PropagateSeed(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scientific concept extraction with a BILOU CRF tagger"};
  app.require_subcommand(1);
  Flags flags;

  using Command = std::function<int(const RunConfig&, std::ostream&)>;
  std::map<CLI::App*, Command> commands;
  auto add = [&](const std::string& name, const std::string& help,
                 Command fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "JSON config file");
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--seed", flags.seed, "master seed");
    sub->add_option("--threads", flags.threads, "OpenMP threads (0 = default)");
    sub->add_flag("--quiet", flags.quiet, "no progress on stderr");
    sub->add_option("--format", flags.format, "corpus format")
        ->check(CLI::IsMember({"auto", "jsonl", "conll"}));
    commands[sub] = std::move(fn);
    return sub;
  };
  auto corpus_opts = [&](CLI::App* sub) {
    sub->add_option("--corpus", flags.corpus, "annotated corpus file(s)");
  };
  auto train_opts = [&](CLI::App* sub) {
    sub->add_option("--lambda", flags.lambda, "L2 strength");
    sub->add_option("--max-epochs", flags.max_epochs, "optimizer iterations");
    sub->add_option("--gazetteer", flags.gazetteers, "gazetteer file(s)");
    sub->add_option("--clusters", flags.clusters, "word cluster file");
  };

  auto* stats = add("stats", "per-domain corpus statistics", sciconcept::CmdStats);
  corpus_opts(stats);

  auto* train = add("train", "train a model", sciconcept::CmdTrain);
  corpus_opts(train);
  train_opts(train);
  train->add_option("--dev", flags.dev, "dev corpus for early stopping");
  train->add_option("--model", flags.model, "model output path");

  auto* tag = add("tag", "tag a corpus with a model", sciconcept::CmdTag);
  tag->add_option("--model", flags.model, "model file")->required();
  tag->add_option("--input", flags.input, "corpus to tag")->required();

  auto* eval = add("eval", "span F1 against a gold corpus", sciconcept::CmdEval);
  corpus_opts(eval);
  eval->add_option("--model", flags.model, "model file");
  eval->add_option("--input", flags.input, "predicted corpus (instead of a model)");

  auto* cv = add("cv", "k-fold cross-validation", sciconcept::CmdCv);
  corpus_opts(cv);
  train_opts(cv);
  cv->add_option("--folds", flags.folds, "number of folds");
  cv->add_option("--lambda-grid", flags.lambda_grid, "L2 values tuned on dev");
  cv->add_flag("--cross-domain", flags.cross_domain,
               "also train per-domain models and the cross-domain matrix");

  auto* al = add("al", "simulated active learning", sciconcept::CmdAl);
  corpus_opts(al);
  train_opts(al);
  al->add_option("--folds", flags.folds, "number of folds");
  al->add_option("--strategy", flags.strategy, "mnlp, random or both")
      ->check(CLI::IsMember({"mnlp", "random", "both"}));
  al->add_option("--iterations", flags.iterations, "active learning rounds");
  al->add_option("--batch-fraction", flags.batch_fraction, "share added per round");
  al->add_option("--seed-fraction", flags.seed_fraction, "initial labelled share");

  auto* kappa = add("kappa", "Cohen's kappa between two annotation files",
                    sciconcept::CmdKappa);
  kappa->add_option("--input", flags.input, "first annotation file")->required();
  kappa->add_option("--input-b", flags.input_b, "second annotation file")
      ->required();

  auto* silver = add("silver", "tag a directory of raw abstracts",
                     sciconcept::CmdSilver);
  silver->add_option("--model", flags.model, "model file")->required();
  silver->add_option("--input", flags.input, "directory of .txt or .jsonl files")
      ->required();

  auto* synth = add("synth", "write a synthetic corpus", sciconcept::CmdSynth);
  synth->add_option("--kind", flags.kind, "stm, separable or difficulty")
      ->check(CLI::IsMember({"stm", "separable", "difficulty"}));
  synth->add_option("--sentences", flags.sentences, "separable corpus size");

  auto* plot = add("plot", "SVG learning curve from al_summary.csv",
                   sciconcept::CmdPlot);
  plot->add_option("--input", flags.input, "al_summary.csv")->required();

  auto* correlate = add("correlate", "Pearson R of per-domain rows",
                        sciconcept::CmdCorrelate);
  correlate->add_option("--input", flags.input, "per-domain CSV")->required();
  correlate->add_option("--kappa-row", flags.kappa_row, "row holding kappa");
  correlate->add_option("--count-row", flags.count_row, "row holding counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(sciconcept::ExitCode::kUsage);
  }
  try {
    for (const auto& [sub, fn] : commands) {
      if (sub->parsed()) return fn(Resolve(flags), std::cout);
    }
  } catch (const sciconcept::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(sciconcept::ExitCode::kValidation);
  }
  return static_cast<int>(sciconcept::ExitCode::kUsage);
}
