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
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sciconcept/error.hpp"
#include "sciconcept/metrics.hpp"

using namespace sciconcept;

namespace {

const Tag O = kOutsideTag;
const Tag kUProc = MakeTag(Prefix::kUnit, Concept::kProcess);
const Tag kUData = MakeTag(Prefix::kUnit, Concept::kData);

SpanAnnotation S(int start, int end, Concept c) {
  return SpanAnnotation{0, start, end, c};
}

// Covariance over the product of standard deviations, written out.
double TwoPassR(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("span F1 fixtures") {
  const DocumentSpans gold = {{"d", {S(0, 2, Concept::kMaterial),
                                     S(3, 4, Concept::kData)}}};
  CHECK(SpanF1(gold, gold).overall.f1() == 1.0);

  const DocumentSpans g1 = {{"d", {S(0, 2, Concept::kMaterial)}}};
  const DocumentSpans p1 = {{"d", {S(0, 1, Concept::kMaterial)}}};
  CHECK(SpanF1(g1, p1).overall.f1() == 0.0);

  // gold {A, B}, pred {A, C}.
  const DocumentSpans pred = {{"d", {S(0, 2, Concept::kMaterial),
                                     S(5, 6, Concept::kProcess)}}};
  const EvalReport r = SpanF1(gold, pred);
  CHECK(r.overall.tp == 1);
  CHECK(r.overall.fp == 1);
  CHECK(r.overall.fn == 1);
  CHECK(r.overall.precision() == 0.5);
  CHECK(r.overall.recall() == 0.5);
  CHECK(r.overall.f1() == 0.5);
  CHECK(r.of(Concept::kMaterial).f1() == 1.0);
  CHECK(r.of(Concept::kMethod).f1() == 0.0);
  CHECK(r.of(Concept::kMethod).support() == 0);

  // Swapping gold and prediction exchanges P and R.
  const EvalReport s = SpanF1(pred, gold);
  CHECK(s.overall.precision() == r.overall.recall());
  CHECK(s.overall.recall() == r.overall.precision());

  const DocumentSpans other = {{"e", {}}};
  CHECK_THROWS_AS(SpanF1(gold, other), ValidationError);
}

TEST_CASE("token confusion") {
  const std::vector<TagSequence> gold = {{O, O, O, O}};
  const std::vector<TagSequence> pred = {{kUData, kUData, kUData, kUData}};
  const TokenConfusion c = ComputeTokenConfusion(gold, pred);
  CHECK(c.accuracy() == 0.0);
  CHECK(c.counts[kNumConcepts][static_cast<int>(Concept::kData)] == 4);
  CHECK(ComputeTokenConfusion(gold, gold).accuracy() == 1.0);

  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    TagSequence a(6), b(6);
    for (int i = 0; i < 6; ++i) {
      a[i] = static_cast<Tag>(rng.UniformIndex(kNumTags));
      b[i] = static_cast<Tag>(rng.UniformIndex(kNumTags));
    }
    const TokenConfusion m = ComputeTokenConfusion({a}, {b});
    long same = 0;
    for (int i = 0; i < 6; ++i) {
      same += CollapsedLabel(a[i]) == CollapsedLabel(b[i]);
    }
    CHECK(m.total == 6);
    CHECK(m.correct() == same);
  }
  CHECK_THROWS_AS(ComputeTokenConfusion({{O}}, {{O, O}}), ValidationError);
}

TEST_CASE("cohen's kappa fixtures") {
  const std::vector<TagSequence> a = {{O, O, kUProc, kUProc}};
  const std::vector<TagSequence> b = {{O, kUProc, kUProc, kUProc}};
  const AgreementReport r = CohensKappa(a, b);
  CHECK(r.observed == 0.75);
  CHECK(r.expected == 0.5);
  CHECK(r.kappa == 0.5);
  CHECK(CohensKappa(a, a).kappa == 1.0);
  // Both constant with the same label.
  CHECK(CohensKappa({{O, O}}, {{O, O}}).kappa == 1.0);
  // Relabelling both annotators leaves kappa unchanged.
  const std::vector<TagSequence> a2 = {{kUData, kUData, O, O}};
  const std::vector<TagSequence> b2 = {{kUData, O, O, O}};
  CHECK(CohensKappa(a2, b2).kappa == 0.5);
}

TEST_CASE("pearson fixtures") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  CHECK(PearsonR(x, x).r == doctest::Approx(1.0).epsilon(1e-15));
  std::vector<double> y;
  for (double v : x) y.push_back(-2.0 * v + 3.0);
  CHECK(PearsonR(x, y).r == doctest::Approx(-1.0).epsilon(1e-15));
  const std::vector<double> a = {1, 2, 3}, b = {2, 4, 7};
  CHECK(PearsonR(a, b).r == doctest::Approx(TwoPassR(a, b)).epsilon(1e-14));
  CHECK_THROWS_AS(PearsonR({1, 1, 1}, {1, 2, 3}), NumericalError);
  CHECK_THROWS_AS(PearsonR({1}, {1}), ValidationError);

  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> u(8), v(8);
    for (int i = 0; i < 8; ++i) {
      u[i] = rng.UniformReal(-5, 5);
      v[i] = rng.UniformReal(-5, 5);
    }
    const double r = PearsonR(u, v).r;
    CHECK(std::abs(r - TwoPassR(u, v)) < 1e-12);
    std::vector<double> w;
    for (double e : v) w.push_back(3.0 * e + 1.0);
    CHECK(PearsonR(u, w).r == doctest::Approx(r).epsilon(1e-12));
  }
}

TEST_CASE("correlation table over the published per-domain rows") {
  std::ifstream in(SCICONCEPT_DATA_DIR "/table5.csv");
  REQUIRE(in.good());
  const auto rows = ReadPerDomainCsv(in, "table5.csv");
  const CorrelationTable t = ComputeCorrelationTable(rows, "kappa", "count");
  auto find = [&](const std::string& name) {
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (t.rows[i].name == name) return i;
    }
    FAIL("missing row " << name);
    return std::size_t{0};
  };
  CHECK(t.r_kappa[find("kappa")] == doctest::Approx(1.0));
  CHECK(std::abs(t.r_count[find("kappa")] - -0.02) <= 0.005);
  CHECK(std::abs(t.r_kappa[find("domain_independent_f1")] - 0.28) <= 0.005);
  CHECK(std::abs(t.r_count[find("domain_independent_f1")] - 0.76) <= 0.005);
  CHECK(std::abs(t.r_kappa[find("domain_dependent_f1")] - 0.20) <= 0.005);
  CHECK(std::abs(t.r_count[find("domain_dependent_f1")] - 0.70) <= 0.005);

  std::istringstream missing("row,Agr,Ast\nkappa,1,2\n");
  CHECK_THROWS_AS(ReadPerDomainCsv(missing, "m.csv"), ValidationError);
}

TEST_CASE("mean and population std") {
  const MeanStd m = ComputeMeanStd({1.0, 2.0, 3.0, 4.0});
  CHECK(m.mean == 2.5);
  CHECK(m.std == doctest::Approx(std::sqrt(1.25)));
  CHECK(FormatFixed(-0.0000001, 3) == "0.000");
  CHECK(FormatFixed(0.12345, 2) == "0.12");
}
