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

// Command implementations behind the `sciconcept` binary. Every command
// reads a RunConfig, writes its outputs atomically under `out` together with
// an effective-config echo, and returns a process exit code (errors are
// thrown as sciconcept::Error).

#ifndef SCICONCEPT_COMMANDS_HPP_
#define SCICONCEPT_COMMANDS_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sciconcept/active.hpp"
#include "sciconcept/folds.hpp"
#include "sciconcept/model.hpp"

namespace sciconcept {

struct RunConfig {
  std::vector<std::string> corpus;  // concatenated in order
  std::string format = "auto";      // auto, jsonl, conll
  std::string dev;                  // optional dev corpus for `train`
  std::uint64_t seed = 0;
  int folds = 5;
  SplitCounts split;
  TrainConfig train;
  ALConfig al;
  std::vector<Strategy> strategies = {Strategy::kMnlp, Strategy::kRandom};
  std::vector<double> lambda_grid = {0.01, 0.1, 1.0, 10.0};
  bool cross_domain = false;
  std::vector<std::string> gazetteers;
  std::string clusters;
  std::string model;
  std::string out = "out";
  int threads = 0;  // 0 = OpenMP default
  bool quiet = false;

  // Command-specific inputs.
  std::string input;     // tag, eval (predictions), silver, plot, correlate
  std::string input_b;   // kappa: second annotation file
  std::string synth_kind = "stm";
  int synth_sentences = 1000;
  std::string kappa_row = "kappa";
  std::string count_row = "count";
};

// Merges a JSON config document into `config`. Unknown keys and
// ill-typed values throw UsageError naming `source`.
void MergeConfigJson(RunConfig& config, std::string_view text,
                     const std::string& source);
// Effective config as pretty-printed JSON; MergeConfigJson of this text
// into a default RunConfig reproduces `config`.
std::string EffectiveConfigJson(const RunConfig& config);

// Propagates `seed` into the training and active-learning configs.
void PropagateSeed(RunConfig& config);

int CmdStats(const RunConfig& config, std::ostream& out);
int CmdTrain(const RunConfig& config, std::ostream& out);
int CmdTag(const RunConfig& config, std::ostream& out);
int CmdEval(const RunConfig& config, std::ostream& out);
int CmdCv(const RunConfig& config, std::ostream& out);
int CmdAl(const RunConfig& config, std::ostream& out);
int CmdKappa(const RunConfig& config, std::ostream& out);
int CmdSilver(const RunConfig& config, std::ostream& out);
int CmdSynth(const RunConfig& config, std::ostream& out);
int CmdPlot(const RunConfig& config, std::ostream& out);
int CmdCorrelate(const RunConfig& config, std::ostream& out);

// Parses an AlSummaryCsv document back into budgets and the full-data
// reference (fold traces are left empty).
ALExperiment ReadAlSummaryCsv(std::string_view text, const std::string& source);

}  // namespace sciconcept

#endif  // SCICONCEPT_COMMANDS_HPP_
