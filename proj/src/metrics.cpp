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

#include "sciconcept/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <set>
#include <sstream>

#include "sciconcept/error.hpp"

namespace sciconcept {

std::string FormatFixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  // No "-0.000".
  if (std::string_view(buf).find_first_not_of("-0.") == std::string_view::npos &&
      buf[0] == '-') {
    return buf + 1;
  }
  return buf;
}

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

std::string_view LabelName(int label) {
  return label == kNumConcepts ? std::string_view("O")
                               : ConceptName(static_cast<Concept>(label));
}

long TokenConfusion::correct() const {
  long c = 0;
  for (int i = 0; i < kNumLabels; ++i) c += counts[i][i];
  return c;
}

DocumentSpans GoldSpans(const Corpus& corpus) {
  DocumentSpans out;
  for (const Document& d : corpus) out[d.id] = d.annotations;
  return out;
}

EvalReport SpanF1(const DocumentSpans& gold, const DocumentSpans& pred) {
  if (gold.size() != pred.size()) {
    throw ValidationError("gold covers " + std::to_string(gold.size()) +
                          " documents, prediction " +
                          std::to_string(pred.size()));
  }
  EvalReport report;
  for (const auto& [id, gold_spans] : gold) {
    const auto it = pred.find(id);
    if (it == pred.end()) {
      throw ValidationError("document '" + id + "' missing from prediction");
    }
    const std::set<SpanAnnotation> g(gold_spans.begin(), gold_spans.end());
    const std::set<SpanAnnotation> p(it->second.begin(), it->second.end());
    for (const SpanAnnotation& s : p) {
      auto& counts = report.per_concept[static_cast<int>(s.kind)];
      if (g.count(s)) {
        ++counts.tp;
      } else {
        ++counts.fp;
      }
    }
    for (const SpanAnnotation& s : g) {
      if (!p.count(s)) ++report.per_concept[static_cast<int>(s.kind)].fn;
    }
  }
  for (const SpanCounts& c : report.per_concept) report.overall += c;
  return report;
}

TokenConfusion ComputeTokenConfusion(const std::vector<TagSequence>& gold,
                                     const std::vector<TagSequence>& pred) {
  if (gold.size() != pred.size()) {
    throw ValidationError("token confusion: " + std::to_string(gold.size()) +
                          " gold sequences vs " + std::to_string(pred.size()) +
                          " predicted");
  }
  TokenConfusion c;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != pred[s].size()) {
      throw ValidationError("token confusion: sequence " + std::to_string(s) +
                            " has " + std::to_string(gold[s].size()) +
                            " gold and " + std::to_string(pred[s].size()) +
                            " predicted tags");
    }
    for (std::size_t t = 0; t < gold[s].size(); ++t) {
      ++c.counts[CollapsedLabel(gold[s][t])][CollapsedLabel(pred[s][t])];
      ++c.total;
    }
  }
  return c;
}

EvalReport Evaluate(const Corpus& gold,
                    const std::vector<std::vector<TagSequence>>& predicted) {
  if (gold.size() != predicted.size()) {
    throw ValidationError("evaluation: document count mismatch");
  }
  DocumentSpans pred_spans;
  std::vector<TagSequence> gold_tags;
  std::vector<TagSequence> pred_tags;
  for (std::size_t d = 0; d < gold.size(); ++d) {
    const Document& doc = gold[d];
    if (predicted[d].size() != doc.sentences.size()) {
      throw ValidationError("evaluation: sentence count mismatch in '" +
                            doc.id + "'");
    }
    auto& spans = pred_spans[doc.id];
    for (int s = 0; s < static_cast<int>(predicted[d].size()); ++s) {
      for (const SpanAnnotation& a : DecodeBilou(predicted[d][s], s)) {
        spans.push_back(a);
      }
      pred_tags.push_back(predicted[d][s]);
    }
    for (TagSequence& t : DocumentTags(doc)) gold_tags.push_back(std::move(t));
  }
  EvalReport report = SpanF1(GoldSpans(gold), pred_spans);
  report.confusion = ComputeTokenConfusion(gold_tags, pred_tags);
  report.has_tokens = true;
  return report;
}

AgreementReport CohensKappaLabels(const std::vector<int>& a,
                                  const std::vector<int>& b) {
  if (a.size() != b.size()) {
    throw ValidationError("kappa: label streams differ in length (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw ValidationError("kappa: empty label streams");
  AgreementReport r;
  r.tokens = static_cast<long>(a.size());
  long agree = 0;
  std::array<long, kNumLabels> ca{};
  std::array<long, kNumLabels> cb{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] >= kNumLabels || b[i] < 0 || b[i] >= kNumLabels) {
      throw ValidationError("kappa: label out of range");
    }
    agree += a[i] == b[i];
    ++ca[a[i]];
    ++cb[b[i]];
  }
  const double n = static_cast<double>(r.tokens);
  r.observed = agree / n;
  for (int l = 0; l < kNumLabels; ++l) {
    r.marginals_a[l] = ca[l] / n;
    r.marginals_b[l] = cb[l] / n;
    r.expected += r.marginals_a[l] * r.marginals_b[l];
  }
  if (r.expected >= 1.0) {
    if (r.observed < 1.0) {
      throw NumericalError("kappa undefined: chance agreement is 1");
    }
    r.kappa = 1.0;
    return r;
  }
  r.kappa = (r.observed - r.expected) / (1.0 - r.expected);
  return r;
}

AgreementReport CohensKappa(const std::vector<TagSequence>& a,
                            const std::vector<TagSequence>& b) {
  if (a.size() != b.size()) {
    throw ValidationError("kappa: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + " sequences");
  }
  std::vector<int> la;
  std::vector<int> lb;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s].size() != b[s].size()) {
      throw ValidationError("kappa: sequence " + std::to_string(s) +
                            " differs in length");
    }
    for (Tag t : a[s]) la.push_back(CollapsedLabel(t));
    for (Tag t : b[s]) lb.push_back(CollapsedLabel(t));
  }
  return CohensKappaLabels(la, lb);
}

CorrelationReport PearsonR(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw ValidationError("pearson: series lengths differ");
  }
  if (x.size() < 2) throw ValidationError("pearson: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw NumericalError("pearson: correlation undefined for a constant series");
  }
  CorrelationReport r;
  r.n = static_cast<int>(x.size());
  r.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return r;
}

CorrelationTable ComputeCorrelationTable(const std::vector<PerDomainRow>& rows,
                                         const std::string& kappa_row,
                                         const std::string& count_row) {
  auto find = [&](const std::string& name) -> const PerDomainRow& {
    for (const PerDomainRow& r : rows) {
      if (r.name == name) return r;
    }
    throw ValidationError("correlation table: missing row '" + name + "'");
  };
  const PerDomainRow& kappa = find(kappa_row);
  const PerDomainRow& count = find(count_row);
  auto vec = [](const PerDomainRow& r) {
    return std::vector<double>(r.values.begin(), r.values.end());
  };
  CorrelationTable table;
  table.rows = rows;
  for (const PerDomainRow& r : rows) {
    table.r_kappa.push_back(PearsonR(vec(r), vec(kappa)).r);
    table.r_count.push_back(PearsonR(vec(r), vec(count)).r);
  }
  return table;
}

std::vector<PerDomainRow> ReadPerDomainCsv(std::istream& in,
                                           const std::string& source) {
  std::string line;
  int line_no = 0;
  std::vector<int> column_domain;
  std::vector<PerDomainRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = SplitCsvLine(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (column_domain.empty()) {
      std::array<bool, kNumDomains> seen{};
      column_domain.push_back(-1);
      for (std::size_t c = 1; c < cells.size(); ++c) {
        const auto d = ParseDomain(cells[c]);
        column_domain.push_back(d ? static_cast<int>(*d) : -1);
        if (d) seen[static_cast<int>(*d)] = true;
      }
      for (Domain d : kAllDomains) {
        if (!seen[static_cast<int>(d)]) {
          throw ValidationError(where + ": missing domain column " +
                                std::string(DomainCode(d)));
        }
      }
      continue;
    }
    PerDomainRow row;
    row.name = cells.empty() ? "" : cells[0];
    for (std::size_t c = 1; c < cells.size() && c < column_domain.size(); ++c) {
      if (column_domain[c] < 0) continue;
      try {
        std::size_t used = 0;
        row.values[column_domain[c]] = std::stod(cells[c], &used);
        if (used != cells[c].size()) throw std::invalid_argument(cells[c]);
      } catch (const std::exception&) {
        throw ValidationError(where + ": bad value '" + cells[c] + "'");
      }
    }
    if (cells.size() < column_domain.size()) {
      throw ValidationError(where + ": row '" + row.name +
                            "' is missing domain values");
    }
    rows.push_back(std::move(row));
  }
  if (column_domain.empty()) throw ValidationError(source + ": empty table");
  return rows;
}

std::string CorrelationTableCsv(const CorrelationTable& table) {
  std::ostringstream out;
  out << "row";
  for (Domain d : kAllDomains) out << ',' << DomainCode(d);
  out << ",R_kappa,R_count\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    out << table.rows[i].name;
    for (double v : table.rows[i].values) out << ',' << FormatFixed(v, 4);
    out << ',' << FormatFixed(table.r_kappa[i], 4) << ','
        << FormatFixed(table.r_count[i], 4) << '\n';
  }
  return out.str();
}

std::string EvalReportCsv(const EvalReport& report) {
  std::ostringstream out;
  out << "concept,precision,recall,f1,tp,fp,fn,support\n";
  auto line = [&](std::string_view name, const SpanCounts& c) {
    out << name << ',' << FormatFixed(c.precision(), 6) << ','
        << FormatFixed(c.recall(), 6) << ',' << FormatFixed(c.f1(), 6) << ',' << c.tp
        << ',' << c.fp << ',' << c.fn << ',' << c.support() << '\n';
  };
  for (Concept c : kAllConcepts) line(ConceptName(c), report.of(c));
  line("Overall", report.overall);
  if (report.has_tokens) {
    out << "token_accuracy," << FormatFixed(report.token_accuracy(), 6) << '\n';
  }
  return out.str();
}

std::string ConfusionCsv(const TokenConfusion& confusion,
                         bool row_normalized) {
  std::ostringstream out;
  out << "gold\\pred";
  for (int l = 0; l < kNumLabels; ++l) out << ',' << LabelName(l);
  out << '\n';
  for (int g = 0; g < kNumLabels; ++g) {
    out << LabelName(g);
    long total = 0;
    for (int p = 0; p < kNumLabels; ++p) total += confusion.counts[g][p];
    for (int p = 0; p < kNumLabels; ++p) {
      if (row_normalized) {
        const double v =
            total == 0 ? 0.0
                       : static_cast<double>(confusion.counts[g][p]) / total;
        out << ',' << FormatFixed(v, 4);
      } else {
        out << ',' << confusion.counts[g][p];
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string EvalReportTable(const EvalReport& report) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-10s %9s %9s %9s %8s\n", "", "P", "R",
                "F1", "support");
  out << buf;
  auto line = [&](std::string_view name, const SpanCounts& c) {
    std::snprintf(buf, sizeof(buf), "%-10.*s %9.2f %9.2f %9.2f %8ld\n",
                  static_cast<int>(name.size()), name.data(),
                  100.0 * c.precision(), 100.0 * c.recall(), 100.0 * c.f1(),
                  c.support());
    out << buf;
  };
  for (Concept c : kAllConcepts) line(ConceptName(c), report.of(c));
  line("Overall", report.overall);
  if (report.has_tokens) {
    std::snprintf(buf, sizeof(buf), "token accuracy %.2f\n",
                  100.0 * report.token_accuracy());
    out << buf;
  }
  return out.str();
}

MeanStd ComputeMeanStd(const std::vector<double>& values) {
  MeanStd m;
  if (values.empty()) return m;
  for (double v : values) m.mean += v;
  m.mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - m.mean) * (v - m.mean);
  m.std = std::sqrt(ss / static_cast<double>(values.size()));
  return m;
}

}  // namespace sciconcept
