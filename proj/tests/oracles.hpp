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

// Brute-force and finite-difference references shared by the unit tests
// and the acceptance runner. Nothing here calls the inference code under
// test.

#ifndef SCICONCEPT_TESTS_ORACLES_HPP_
#define SCICONCEPT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sciconcept/bilou.hpp"
#include "sciconcept/crf.hpp"
#include "sciconcept/rng.hpp"

namespace sciconcept::oracle {

inline CrfWeights RandomWeights(Rng& rng, int features, bool constrained,
                                double scale = 1.0) {
  CrfWeights w(features, constrained ? ConstraintMask::Bilou()
                                     : ConstraintMask::None());
  for (double& p : w.params()) p = rng.UniformReal(-scale, scale);
  return w;
}

inline SentenceFeatures RandomFeatures(Rng& rng, int n, int features) {
  SentenceFeatures x(n);
  for (auto& v : x) {
    const int k = 1 + static_cast<int>(rng.UniformIndex(4));
    for (int i = 0; i < k; ++i) {
      v.push_back(static_cast<int>(rng.UniformIndex(features)));
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return x;
}

// Direct potential sum, -inf on a masked position.
inline double ExplicitScore(const CrfWeights& w, const SentenceFeatures& x,
                            const std::vector<Tag>& y) {
  const ConstraintMask& m = w.mask();
  const int n = static_cast<int>(y.size());
  if (!m.start[y[0]] || !m.end[y[n - 1]]) {
    return -std::numeric_limits<double>::infinity();
  }
  double s = w.start(y[0]) + w.end(y[n - 1]);
  for (int t = 0; t < n; ++t) {
    for (int f : x[t]) s += w.emission(f, y[t]);
    if (t > 0) {
      if (!m.allows(y[t - 1], y[t])) {
        return -std::numeric_limits<double>::infinity();
      }
      s += w.transition(y[t - 1], y[t]);
    }
  }
  return s;
}

struct Enumeration {
  double log_z = -std::numeric_limits<double>::infinity();
  std::vector<Tag> best;
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> marginals;  // n x 17
  long allowed = 0;
};

// Walks all 17^n sequences in lexicographic order, twice: once for the
// maximum, once for the normalizer and marginals.
inline Enumeration Enumerate(const CrfWeights& w, const SentenceFeatures& x) {
  const int n = static_cast<int>(x.size());
  Enumeration e;
  auto walk = [&](auto&& visit) {
    std::vector<Tag> y(n, 0);
    for (;;) {
      const double s = ExplicitScore(w, x, y);
      if (s > -std::numeric_limits<double>::infinity()) visit(y, s);
      int pos = n - 1;
      while (pos >= 0 && ++y[pos] == kNumTags) y[pos--] = 0;
      if (pos < 0) break;
    }
  };
  walk([&](const std::vector<Tag>& y, double s) {
    ++e.allowed;
    if (s > e.best_score) {
      e.best_score = s;
      e.best = y;
    }
  });
  const double max_score = e.best_score;
  double sum = 0.0;
  e.marginals.assign(n, std::vector<double>(kNumTags, 0.0));
  walk([&](const std::vector<Tag>& y, double s) {
    const double p = std::exp(s - max_score);
    sum += p;
    for (int t = 0; t < n; ++t) e.marginals[t][y[t]] += p;
  });
  e.log_z = max_score + std::log(sum);
  for (auto& row : e.marginals) {
    for (double& m : row) m /= sum;
  }
  return e;
}

// Regularized NLL by enumeration.
inline double BruteLoss(const CrfWeights& w,
                        const std::vector<LabeledSentence>& batch,
                        double lambda) {
  double loss = 0.0;
  for (const LabeledSentence& s : batch) {
    loss += Enumerate(w, s.features).log_z -
            ExplicitScore(w, s.features, s.gold);
  }
  double sq = 0.0;
  for (double p : w.params()) sq += p * p;
  return loss + 0.5 * lambda * sq;
}

// Random pairwise-disjoint spans over n tokens.
inline std::vector<SpanAnnotation> RandomSpans(Rng& rng, int n,
                                               int sentence = 0) {
  std::vector<SpanAnnotation> spans;
  int t = 0;
  while (t < n) {
    if (rng.Bernoulli(0.4)) {
      const int len = 1 + static_cast<int>(rng.UniformIndex(
                              std::min(4, n - t)));
      spans.push_back(SpanAnnotation{
          sentence, t, t + len,
          static_cast<Concept>(rng.UniformIndex(kNumConcepts))});
      t += len;
    } else {
      ++t;
    }
  }
  return spans;
}

// Left-to-right repair, written independently of DecodeBilou.
inline std::vector<SpanAnnotation> ReferenceRepair(const std::vector<Tag>& tags) {
  std::vector<SpanAnnotation> out;
  const int n = static_cast<int>(tags.size());
  int i = 0;
  while (i < n) {
    if (tags[i] == kOutsideTag) {
      ++i;
      continue;
    }
    const Concept c = ConceptOf(tags[i]);
    const Prefix p = PrefixOf(tags[i]);
    int end = i + 1;
    if (p == Prefix::kBegin || p == Prefix::kInside) {
      while (end < n && tags[end] != kOutsideTag && ConceptOf(tags[end]) == c &&
             (PrefixOf(tags[end]) == Prefix::kInside ||
              PrefixOf(tags[end]) == Prefix::kLast)) {
        const bool last = PrefixOf(tags[end]) == Prefix::kLast;
        ++end;
        if (last) break;
      }
    }
    out.push_back(SpanAnnotation{0, i, end, c});
    i = end;
  }
  return out;
}

// Central difference of f at coordinate i.
template <typename F>
double CentralDifference(F&& f, std::vector<double> x, std::size_t i,
                         double h) {
  const double x0 = x[i];
  x[i] = x0 + h;
  const double up = f(x);
  x[i] = x0 - h;
  const double down = f(x);
  return (up - down) / (2.0 * h);
}

}  // namespace sciconcept::oracle

#endif  // SCICONCEPT_TESTS_ORACLES_HPP_
