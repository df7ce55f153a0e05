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

// Evaluation and agreement statistics.
//
// Span scores use exact matching on (sentence, start, end, concept) and are
// micro-averaged: the overall score pools true/false positives and false
// negatives over all documents and concepts, the per-concept scores pool
// over documents. Token-level scores collapse BILOU tags to their concept
// (or O) first.

#ifndef SCICONCEPT_METRICS_HPP_
#define SCICONCEPT_METRICS_HPP_

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sciconcept/bilou.hpp"
#include "sciconcept/corpus.hpp"

namespace sciconcept {

struct SpanCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  long support() const { return tp + fn; }
  double precision() const {
    return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
  }
  double recall() const {
    return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
  }
  // 0 when precision + recall is 0, including the empty class.
  double f1() const {
    const double p = precision();
    const double r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  }
  SpanCounts& operator+=(const SpanCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
};

// Labels: Process, Method, Material, Data, O (see CollapsedLabel).
inline constexpr int kNumLabels = kNumConcepts + 1;
std::string_view LabelName(int label);

struct TokenConfusion {
  // counts[gold][pred]
  std::array<std::array<long, kNumLabels>, kNumLabels> counts{};
  long total = 0;

  long correct() const;
  double accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(correct()) / total;
  }
};

struct EvalReport {
  std::array<SpanCounts, kNumConcepts> per_concept{};
  SpanCounts overall;
  // Present when token-level tags were supplied.
  bool has_tokens = false;
  TokenConfusion confusion;

  double token_accuracy() const { return confusion.accuracy(); }
  const SpanCounts& of(Concept c) const {
    return per_concept[static_cast<int>(c)];
  }
};

// Spans per document id.
using DocumentSpans = std::map<std::string, std::vector<SpanAnnotation>>;

DocumentSpans GoldSpans(const Corpus& corpus);

// Throws ValidationError if the two maps cover different documents.
EvalReport SpanF1(const DocumentSpans& gold, const DocumentSpans& pred);

// Sequences are paired by position; throws ValidationError on a length
// mismatch.
TokenConfusion ComputeTokenConfusion(const std::vector<TagSequence>& gold,
                                     const std::vector<TagSequence>& pred);

// Span and token scores of predicted tags against a gold corpus.
// predicted[d][s] are the tags of sentence s of document d.
EvalReport Evaluate(const Corpus& gold,
                    const std::vector<std::vector<TagSequence>>& predicted);

struct AgreementReport {
  double kappa = 0.0;
  double observed = 0.0;  // p_o
  double expected = 0.0;  // p_e
  long tokens = 0;
  std::array<double, kNumLabels> marginals_a{};
  std::array<double, kNumLabels> marginals_b{};
};

// Token-level Cohen's kappa over the collapsed labels. Throws
// ValidationError on misaligned input and NumericalError when p_e = 1 but
// p_o < 1. p_e = 1 with p_o = 1 gives kappa = 1.
AgreementReport CohensKappa(const std::vector<TagSequence>& a,
                            const std::vector<TagSequence>& b);

// Same, from label streams already collapsed to [0, kNumLabels).
AgreementReport CohensKappaLabels(const std::vector<int>& a,
                                  const std::vector<int>& b);

struct CorrelationReport {
  double r = 0.0;
  int n = 0;
};

// Product-moment correlation. Throws ValidationError for unequal lengths or
// fewer than two points, NumericalError if either series is constant.
CorrelationReport PearsonR(const std::vector<double>& x,
                           const std::vector<double>& y);

// Named rows of per-domain values, all ten domains present.
struct PerDomainRow {
  std::string name;
  std::array<double, kNumDomains> values{};
};

struct CorrelationTable {
  std::vector<PerDomainRow> rows;
  std::vector<double> r_kappa;
  std::vector<double> r_count;
};

// Correlates every row with the rows named `kappa_row` and `count_row`.
// Throws ValidationError if either is missing.
CorrelationTable ComputeCorrelationTable(const std::vector<PerDomainRow>& rows,
                                         const std::string& kappa_row,
                                         const std::string& count_row);

// CSV "row,<domain codes...>" with any domain column order; throws
// ValidationError if a domain column is missing or a value is unparsable.
std::vector<PerDomainRow> ReadPerDomainCsv(std::istream& in,
                                           const std::string& source);

// CSV with columns row,Agr..Med,R_kappa,R_count; values printed to 4
// decimals.
std::string CorrelationTableCsv(const CorrelationTable& table);

// "concept,precision,recall,f1,tp,fp,fn,support" for the four concepts and
// Overall, followed by token_accuracy when available.
std::string EvalReportCsv(const EvalReport& report);

// Labeled square matrix, rows = gold, columns = predicted. With
// `row_normalized` each row is divided by its total.
std::string ConfusionCsv(const TokenConfusion& confusion, bool row_normalized);

// Aligned plain-text table of EvalReport.
std::string EvalReportTable(const EvalReport& report);

// Mean and (population) standard deviation.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};
MeanStd ComputeMeanStd(const std::vector<double>& values);

// printf("%.*f"), without a sign on zero.
std::string FormatFixed(double v, int decimals);

}  // namespace sciconcept

#endif  // SCICONCEPT_METRICS_HPP_
