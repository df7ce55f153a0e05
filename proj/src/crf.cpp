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

#include "sciconcept/crf.hpp"

#include <algorithm>

#include "sciconcept/error.hpp"

namespace sciconcept {

namespace {

// Sentences per forward-backward block in NllAndGradient. Bounds the memory
// held for per-sentence marginals.
constexpr std::size_t kBlockSize = 256;

// Allowed predecessors of every tag.
struct Predecessors {
  std::array<std::array<Tag, kNumTags>, kNumTags> from{};
  std::array<int, kNumTags> count{};

  explicit Predecessors(const ConstraintMask& mask) {
    for (Tag to = 0; to < kNumTags; ++to) {
      for (Tag f = 0; f < kNumTags; ++f) {
        if (mask.allows(f, to)) from[to][count[to]++] = f;
      }
    }
  }
};

// Allowed successors of every tag.
struct Successors {
  std::array<std::array<Tag, kNumTags>, kNumTags> to{};
  std::array<int, kNumTags> count{};

  explicit Successors(const ConstraintMask& mask) {
    for (Tag f = 0; f < kNumTags; ++f) {
      for (Tag t = 0; t < kNumTags; ++t) {
        if (mask.allows(f, t)) to[f][count[f]++] = t;
      }
    }
  }
};

Matrix Forward(const CrfWeights& w, const Matrix& emit,
               const Predecessors& pred) {
  const int n = emit.rows();
  const ConstraintMask& mask = w.mask();
  Matrix alpha(n, kNumTags, kNegInf);
  for (Tag y = 0; y < kNumTags; ++y) {
    if (mask.start[y]) alpha(0, y) = w.start(y) + emit(0, y);
  }
  std::array<double, kNumTags> terms{};
  for (int t = 1; t < n; ++t) {
    for (Tag y = 0; y < kNumTags; ++y) {
      const int c = pred.count[y];
      for (int k = 0; k < c; ++k) {
        const Tag p = pred.from[y][k];
        terms[k] = alpha(t - 1, p) + w.transition(p, y);
      }
      const double lse = LogSumExp(std::span<const double>(terms.data(), c));
      alpha(t, y) = lse == kNegInf ? kNegInf : lse + emit(t, y);
    }
  }
  return alpha;
}

Matrix Backward(const CrfWeights& w, const Matrix& emit,
                const Successors& succ) {
  const int n = emit.rows();
  const ConstraintMask& mask = w.mask();
  Matrix beta(n, kNumTags, kNegInf);
  for (Tag y = 0; y < kNumTags; ++y) {
    if (mask.end[y]) beta(n - 1, y) = w.end(y);
  }
  std::array<double, kNumTags> terms{};
  for (int t = n - 2; t >= 0; --t) {
    for (Tag y = 0; y < kNumTags; ++y) {
      const int c = succ.count[y];
      for (int k = 0; k < c; ++k) {
        const Tag s = succ.to[y][k];
        terms[k] = w.transition(y, s) + emit(t + 1, s) + beta(t + 1, s);
      }
      beta(t, y) = LogSumExp(std::span<const double>(terms.data(), c));
    }
  }
  return beta;
}

double FinalLogZ(const CrfWeights& w, const Matrix& alpha) {
  const int n = alpha.rows();
  std::array<double, kNumTags> terms{};
  for (Tag y = 0; y < kNumTags; ++y) {
    terms[y] = w.mask().end[y] ? alpha(n - 1, y) + w.end(y) : kNegInf;
  }
  return LogSumExp(terms);
}

void CheckNonEmpty(const SentenceFeatures& x) {
  if (x.empty()) throw ValidationError("CRF inference on an empty sentence");
}

}  // namespace

ConstraintMask ConstraintMask::Bilou() {
  ConstraintMask m;
  for (Tag a = 0; a < kNumTags; ++a) {
    m.start[a] = StartAllowed(a);
    m.end[a] = EndAllowed(a);
    for (Tag b = 0; b < kNumTags; ++b) {
      m.transition[a * kNumTags + b] = TransitionAllowed(a, b);
    }
  }
  return m;
}

ConstraintMask ConstraintMask::None() {
  ConstraintMask m;
  m.transition.fill(true);
  m.start.fill(true);
  m.end.fill(true);
  return m;
}

CrfWeights::CrfWeights(int num_features, ConstraintMask mask)
    : num_features_(num_features),
      mask_(mask),
      params_(static_cast<std::size_t>(num_features) * kNumTags +
                  kNumTags * kNumTags + 2 * kNumTags,
              0.0) {}

double LogSumExp(std::span<const double> v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

Matrix EmissionScores(const CrfWeights& w, const SentenceFeatures& x) {
  const int n = static_cast<int>(x.size());
  Matrix emit(n, kNumTags, 0.0);
  const auto params = w.params();
  for (int t = 0; t < n; ++t) {
    auto row = emit.row(t);
    for (int f : x[t]) {
      const double* wf = params.data() + static_cast<std::size_t>(f) * kNumTags;
      for (Tag y = 0; y < kNumTags; ++y) row[y] += wf[y];
    }
  }
  return emit;
}

double SequenceScore(const CrfWeights& w, const SentenceFeatures& x,
                     std::span<const Tag> tags) {
  if (x.size() != tags.size()) {
    throw ValidationError("sequence score: " + std::to_string(x.size()) +
                          " feature vectors but " +
                          std::to_string(tags.size()) + " tags");
  }
  if (tags.empty()) return 0.0;
  const ConstraintMask& mask = w.mask();
  const int n = static_cast<int>(tags.size());
  if (!mask.start[tags[0]] || !mask.end[tags[n - 1]]) return kNegInf;
  double score = w.start(tags[0]);
  for (int t = 0; t < n; ++t) {
    if (t > 0) {
      if (!mask.allows(tags[t - 1], tags[t])) return kNegInf;
      score += w.transition(tags[t - 1], tags[t]);
    }
    for (int f : x[t]) score += w.emission(f, tags[t]);
  }
  return score + w.end(tags[n - 1]);
}

double LogPartition(const CrfWeights& w, const SentenceFeatures& x) {
  CheckNonEmpty(x);
  const Matrix emit = EmissionScores(w, x);
  return FinalLogZ(w, Forward(w, emit, Predecessors(w.mask())));
}

ForwardBackward RunForwardBackward(const CrfWeights& w,
                                   const SentenceFeatures& x) {
  CheckNonEmpty(x);
  const int n = static_cast<int>(x.size());
  const Matrix emit = EmissionScores(w, x);
  const Matrix alpha = Forward(w, emit, Predecessors(w.mask()));
  const Successors succ(w.mask());
  const Matrix beta = Backward(w, emit, succ);
  ForwardBackward fb;
  fb.log_z = FinalLogZ(w, alpha);
  fb.node = Matrix(n, kNumTags, 0.0);
  fb.edge = Matrix(kNumTags, kNumTags, 0.0);
  for (int t = 0; t < n; ++t) {
    for (Tag y = 0; y < kNumTags; ++y) {
      const double a = alpha(t, y) + beta(t, y);
      fb.node(t, y) = a == kNegInf ? 0.0 : std::exp(a - fb.log_z);
    }
  }
  for (int t = 0; t + 1 < n; ++t) {
    for (Tag y = 0; y < kNumTags; ++y) {
      if (alpha(t, y) == kNegInf) continue;
      for (int k = 0; k < succ.count[y]; ++k) {
        const Tag s = succ.to[y][k];
        const double a = alpha(t, y) + w.transition(y, s) + emit(t + 1, s) +
                         beta(t + 1, s);
        if (a != kNegInf) fb.edge(y, s) += std::exp(a - fb.log_z);
      }
    }
  }
  return fb;
}

Matrix PosteriorMarginals(const CrfWeights& w, const SentenceFeatures& x) {
  return RunForwardBackward(w, x).node;
}

DecodeResult ViterbiDecode(const CrfWeights& w, const SentenceFeatures& x) {
  CheckNonEmpty(x);
  const int n = static_cast<int>(x.size());
  const ConstraintMask& mask = w.mask();
  const Matrix emit = EmissionScores(w, x);
  const Successors succ(mask);

  // suffix(t, y): best score of positions t..n-1 given y_t = y, end included.
  Matrix suffix(n, kNumTags, kNegInf);
  for (Tag y = 0; y < kNumTags; ++y) {
    if (mask.end[y]) suffix(n - 1, y) = emit(n - 1, y) + w.end(y);
  }
  for (int t = n - 2; t >= 0; --t) {
    for (Tag y = 0; y < kNumTags; ++y) {
      double best = kNegInf;
      for (int k = 0; k < succ.count[y]; ++k) {
        const Tag s = succ.to[y][k];
        best = std::max(best, w.transition(y, s) + suffix(t + 1, s));
      }
      if (best != kNegInf) suffix(t, y) = emit(t, y) + best;
    }
  }

  // Greedy forward pass; strict '>' keeps the smallest index on ties.
  DecodeResult r;
  r.tags.resize(n);
  double best = kNegInf;
  Tag arg = kOutsideTag;
  for (Tag y = 0; y < kNumTags; ++y) {
    if (!mask.start[y]) continue;
    const double v = w.start(y) + suffix(0, y);
    if (v > best) {
      best = v;
      arg = y;
    }
  }
  r.tags[0] = arg;
  for (int t = 1; t < n; ++t) {
    const Tag prev = r.tags[t - 1];
    double step_best = kNegInf;
    Tag step_arg = kOutsideTag;
    for (int k = 0; k < succ.count[prev]; ++k) {
      const Tag s = succ.to[prev][k];
      const double v = w.transition(prev, s) + suffix(t, s);
      if (v > step_best) {
        step_best = v;
        step_arg = s;
      }
    }
    r.tags[t] = step_arg;
  }
  r.log_score = SequenceScore(w, x, r.tags);
  r.log_prob = std::min(0.0, r.log_score - LogPartition(w, x));
  return r;
}

LossAndGradient NllAndGradient(const CrfWeights& w,
                               std::span<const LabeledSentence> batch,
                               double l2_lambda, Execution exec) {
  LossAndGradient out;
  out.gradient.assign(w.num_params(), 0.0);
  auto& grad = out.gradient;
  const std::size_t trans = w.TransitionOffset();
  const std::size_t start = w.StartOffset();
  const std::size_t end = w.EndOffset();

  // Exceptions must not escape the parallel region below.
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch[i].features.empty() ||
        batch[i].features.size() != batch[i].gold.size()) {
      throw ValidationError("training sentence " + std::to_string(i) +
                            " is empty or has mismatched tag count");
    }
  }
  std::vector<ForwardBackward> fbs;
  std::vector<double> gold_scores;
  for (std::size_t block = 0; block < batch.size(); block += kBlockSize) {
    const std::size_t m = std::min(kBlockSize, batch.size() - block);
    fbs.assign(m, ForwardBackward{});
    gold_scores.assign(m, 0.0);
    const auto count = static_cast<long>(m);
#pragma omp parallel for schedule(dynamic, 4) if (exec == Execution::kParallel)
    for (long i = 0; i < count; ++i) {
      const LabeledSentence& s = batch[block + i];
      fbs[i] = RunForwardBackward(w, s.features);
      gold_scores[i] = SequenceScore(w, s.features, s.gold);
    }

    // Fixed-order reduction.
    for (std::size_t i = 0; i < m; ++i) {
      const LabeledSentence& s = batch[block + i];
      const ForwardBackward& fb = fbs[i];
      if (gold_scores[i] == kNegInf) {
        throw ValidationError("gold sequence of training sentence " +
                              std::to_string(block + i) +
                              " uses a forbidden transition");
      }
      out.loss += fb.log_z - gold_scores[i];
      const int n = static_cast<int>(s.gold.size());
      for (int t = 0; t < n; ++t) {
        const auto node = fb.node.row(t);
        const Tag g = s.gold[t];
        for (int f : s.features[t]) {
          double* gf = grad.data() + static_cast<std::size_t>(f) * kNumTags;
          for (Tag y = 0; y < kNumTags; ++y) gf[y] += node[y];
          gf[g] -= 1.0;
        }
        if (t > 0) grad[trans + s.gold[t - 1] * kNumTags + g] -= 1.0;
      }
      for (Tag a = 0; a < kNumTags; ++a) {
        for (Tag b = 0; b < kNumTags; ++b) {
          grad[trans + a * kNumTags + b] += fb.edge(a, b);
        }
        grad[start + a] += fb.node(0, a);
        grad[end + a] += fb.node(n - 1, a);
      }
      grad[start + s.gold[0]] -= 1.0;
      grad[end + s.gold[n - 1]] -= 1.0;
    }
  }

  if (l2_lambda != 0.0) {
    const auto params = w.params();
    double sq = 0.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
      sq += params[k] * params[k];
      grad[k] += l2_lambda * params[k];
    }
    out.loss += 0.5 * l2_lambda * sq;
  }
  return out;
}

std::vector<DecodeResult> DecodeBatch(const CrfWeights& w,
                                      std::span<const SentenceFeatures> xs,
                                      Execution exec) {
  for (const SentenceFeatures& x : xs) CheckNonEmpty(x);
  std::vector<DecodeResult> out(xs.size());
  const auto count = static_cast<long>(xs.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == Execution::kParallel)
  for (long i = 0; i < count; ++i) out[i] = ViterbiDecode(w, xs[i]);
  return out;
}

}  // namespace sciconcept
