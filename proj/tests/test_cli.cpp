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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sciconcept/bilou.hpp"
#include "sciconcept/commands.hpp"
#include "sciconcept/error.hpp"
#include "sciconcept/io.hpp"
#include "sciconcept/stats.hpp"
#include "sciconcept/synth.hpp"

using namespace sciconcept;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("sciconcept_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

RunConfig Quiet(const fs::path& out) {
  RunConfig c;
  c.out = out.string();
  c.quiet = true;
  return c;
}

int Shell(const std::string& args) {
  const std::string cmd =
      std::string(SCICONCEPT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config merge and echo") {
  RunConfig c;
  MergeConfigJson(c, R"({"seed": 9, "folds": 3, "train": {"l2_lambda": 0.5},
                        "al": {"iterations": 4, "strategies": ["random"]}})",
                  "cfg.json");
  CHECK(c.seed == 9);
  CHECK(c.folds == 3);
  CHECK(c.train.l2_lambda == 0.5);
  CHECK(c.al.iterations == 4);
  CHECK(c.strategies == std::vector<Strategy>{Strategy::kRandom});
  const std::string echo = EffectiveConfigJson(c);
  RunConfig back;
  MergeConfigJson(back, echo, "echo");
  CHECK(EffectiveConfigJson(back) == echo);
  CHECK(back.train == c.train);

  RunConfig d;
  CHECK_THROWS_AS(MergeConfigJson(d, R"({"sed": 1})", "x"), UsageError);
  CHECK_THROWS_AS(MergeConfigJson(d, R"({"train": {"epochs": 1}})", "x"),
                  UsageError);
  CHECK_THROWS_AS(MergeConfigJson(d, R"({"folds": "five"})", "x"), UsageError);
}

TEST_CASE("stats command on the fixture") {
  TempDir tmp("stats");
  RunConfig c = Quiet(tmp.path);
  c.corpus = {std::string(SCICONCEPT_DATA_DIR) + "/stm_fixture.jsonl"};
  std::ostringstream out;
  CHECK(CmdStats(c, out) == 0);
  const std::string csv = ReadFile(tmp.path / "stats.csv");
  CHECK(csv == CorpusStatsCsv(ComputeCorpusStats(MakeStmFixture())));
  CHECK(fs::exists(tmp.path / "effective_config.json"));
}

TEST_CASE("train, tag, eval and silver") {
  TempDir tmp("pipeline");
  const Corpus corpus = MakeSeparableCorpus(150, 4);
  SaveCorpus(tmp.path / "train.jsonl", corpus, CorpusFormat::kJsonl);
  RunConfig c = Quiet(tmp.path);
  c.corpus = {(tmp.path / "train.jsonl").string()};
  c.train.max_epochs = 60;
  c.train.l2_lambda = 0.01;
  c.train.early_stopping = false;
  std::ostringstream out;
  REQUIRE(CmdTrain(c, out) == 0);
  REQUIRE(fs::exists(tmp.path / "model.json"));
  c.model = (tmp.path / "model.json").string();

  // Gold as predictions scores perfectly.
  RunConfig e = c;
  e.input = c.corpus[0];
  REQUIRE(CmdEval(e, out) == 0);
  const std::string eval = ReadFile(tmp.path / "eval.csv");
  CHECK(eval.find("1.000000") != std::string::npos);

  // Tagging an empty corpus writes an empty corpus.
  WriteFileAtomic(tmp.path / "empty.jsonl", "");
  RunConfig t = c;
  t.input = (tmp.path / "empty.jsonl").string();
  CHECK(CmdTag(t, out) == 0);
  CHECK(ReadFile(tmp.path / "tagged.jsonl").empty());

  // Silver labelling recovers the planted spans of a raw sentence.
  const Document& doc = corpus[0];
  const Sentence& s = doc.sentences[0];
  std::string text;
  std::vector<int> offset;
  for (const Token& tok : s.tokens) {
    if (!text.empty()) text += ' ';
    offset.push_back(static_cast<int>(text.size()));
    text += tok.text;
  }
  fs::create_directories(tmp.path / "raw");
  WriteFileAtomic(tmp.path / "raw" / "abs1.txt", text);
  RunConfig sv = c;
  sv.input = (tmp.path / "raw").string();
  CHECK(CmdSilver(sv, out) == 0);
  const std::string clean = ReadFile(tmp.path / "silver.jsonl");
  // One unreadable file in two exceeds the failure threshold; the good
  // abstract is still written.
  WriteFileAtomic(tmp.path / "raw" / "broken.jsonl", "{not json\n");
  CHECK(CmdSilver(sv, out) == 2);
  CHECK(ReadFile(tmp.path / "silver.jsonl") == clean);
  std::istringstream lines(ReadFile(tmp.path / "silver.jsonl"));
  std::string line;
  REQUIRE(std::getline(lines, line));
  const nlohmann::json rec = nlohmann::json::parse(line);
  CHECK(rec["id"] == "abs1");
  std::vector<std::tuple<int, int, std::string>> want, got;
  for (const SpanAnnotation& a : SpansOfSentence(doc, 0)) {
    want.emplace_back(offset[a.start],
                      offset[a.end - 1] +
                          static_cast<int>(s.tokens[a.end - 1].text.size()),
                      std::string(ConceptName(a.kind)));
  }
  for (const auto& span : rec["spans"]) {
    got.emplace_back(span["char_start"].get<int>(), span["char_end"].get<int>(),
                     span["concept"].get<std::string>());
    const int cs = span["char_start"].get<int>();
    const int ce = span["char_end"].get<int>();
    CHECK(span["surface"].get<std::string>() == text.substr(cs, ce - cs));
  }
  CHECK(got == want);
  CHECK(!std::getline(lines, line));
  CHECK(ReadFile(tmp.path / "concepts.csv").rfind("concept,surface,count\n", 0) ==
        0);
}

TEST_CASE("kappa of identical annotations") {
  TempDir tmp("kappa");
  RunConfig c = Quiet(tmp.path);
  c.input = std::string(SCICONCEPT_DATA_DIR) + "/stm_fixture.jsonl";
  c.input_b = c.input;
  std::ostringstream out;
  CHECK(CmdKappa(c, out) == 0);
  std::istringstream csv(ReadFile(tmp.path / "kappa.csv"));
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "1.000000");
  }
  CHECK(rows == 11);
}

TEST_CASE("binary exit codes") {
  TempDir tmp("exit");
  const std::string out = " --quiet --out " + tmp.path.string();
  const std::string fixture = std::string(SCICONCEPT_DATA_DIR) + "/stm_fixture.jsonl";
  CHECK(Shell("stats --corpus " + fixture + out) == 0);
  CHECK(Shell("nonsense") == 1);
  CHECK(Shell("stats --corpus " + fixture + " --bogus" + out) == 1);
  WriteFileAtomic(tmp.path / "bad.jsonl", "{oops\n");
  CHECK(Shell("stats --corpus " + (tmp.path / "bad.jsonl").string() + out) == 2);
  CHECK(Shell("stats --corpus " + (tmp.path / "missing.jsonl").string() + out) ==
        2);
}
