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

// Linear-chain CRF over the 17 BILOU tags.
//
// The score of a tag sequence y for token features x is
//
//   start[y_0] + sum_t sum_{f in x_t} W[f, y_t]
//              + sum_{t>0} T[y_{t-1}, y_t] + end[y_{n-1}]
//
// and p(y | x) = exp(score(y) - log Z(x)), with Z summing over the sequences
// the constraint mask allows. All inference runs in log space.

#ifndef SCICONCEPT_CRF_HPP_
#define SCICONCEPT_CRF_HPP_

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "sciconcept/bilou.hpp"
#include "sciconcept/features.hpp"

namespace sciconcept {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols,
                                        fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return data_[Index(r, c)]; }
  double operator()(int r, int c) const { return data_[Index(r, c)]; }
  std::span<double> row(int r) {
    return {data_.data() + Index(r, 0), static_cast<std::size_t>(cols_)};
  }
  std::span<const double> row(int r) const {
    return {data_.data() + Index(r, 0), static_cast<std::size_t>(cols_)};
  }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t Index(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Which transitions, first tags and last tags a sequence may use.
struct ConstraintMask {
  std::array<bool, kNumTags * kNumTags> transition{};
  std::array<bool, kNumTags> start{};
  std::array<bool, kNumTags> end{};

  // Exactly the BILOU grammar.
  static ConstraintMask Bilou();
  // Everything allowed.
  static ConstraintMask None();

  bool allows(Tag from, Tag to) const {
    return transition[from * kNumTags + to];
  }
  bool operator==(const ConstraintMask&) const = default;
};

// Weights of a CRF, flattened into one parameter vector:
//   [0, F*17)            emission W[f, tag], feature-major
//   [F*17, F*17+289)     transition T[from, to]
//   next 17              start[tag]
//   next 17              end[tag]
class CrfWeights {
 public:
  CrfWeights() : CrfWeights(0, ConstraintMask::Bilou()) {}
  CrfWeights(int num_features, ConstraintMask mask);

  int num_features() const { return num_features_; }
  const ConstraintMask& mask() const { return mask_; }

  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }
  std::size_t num_params() const { return params_.size(); }

  double& emission(int feature, Tag tag) {
    return params_[static_cast<std::size_t>(feature) * kNumTags + tag];
  }
  double emission(int feature, Tag tag) const {
    return params_[static_cast<std::size_t>(feature) * kNumTags + tag];
  }
  double& transition(Tag from, Tag to) {
    return params_[TransitionOffset() + from * kNumTags + to];
  }
  double transition(Tag from, Tag to) const {
    return params_[TransitionOffset() + from * kNumTags + to];
  }
  double& start(Tag t) { return params_[StartOffset() + t]; }
  double start(Tag t) const { return params_[StartOffset() + t]; }
  double& end(Tag t) { return params_[EndOffset() + t]; }
  double end(Tag t) const { return params_[EndOffset() + t]; }

  std::size_t TransitionOffset() const {
    return static_cast<std::size_t>(num_features_) * kNumTags;
  }
  std::size_t StartOffset() const {
    return TransitionOffset() + kNumTags * kNumTags;
  }
  std::size_t EndOffset() const { return StartOffset() + kNumTags; }

  bool operator==(const CrfWeights&) const = default;

 private:
  int num_features_ = 0;
  ConstraintMask mask_;
  std::vector<double> params_;
};

// Token features of one sentence.
using SentenceFeatures = std::vector<FeatureVector>;

// Training / evaluation instance.
struct LabeledSentence {
  SentenceFeatures features;
  TagSequence gold;
};

struct DecodeResult {
  TagSequence tags;
  double log_score = 0.0;  // unnormalized path score
  double log_prob = 0.0;   // log_score - log Z, <= 0
};

// n x 17 emission scores.
Matrix EmissionScores(const CrfWeights& w, const SentenceFeatures& x);

// -inf if the sequence uses a masked transition, start or end. Throws
// ValidationError if lengths differ.
double SequenceScore(const CrfWeights& w, const SentenceFeatures& x,
                     std::span<const Tag> tags);

// log Z; requires n >= 1.
double LogPartition(const CrfWeights& w, const SentenceFeatures& x);

// n x 17 table of p(y_t = tag | x).
Matrix PosteriorMarginals(const CrfWeights& w, const SentenceFeatures& x);

// Highest-scoring allowed sequence; among equal scores the lexicographically
// smallest tag-index sequence.
DecodeResult ViterbiDecode(const CrfWeights& w, const SentenceFeatures& x);

// Forward-backward summary of one sentence.
struct ForwardBackward {
  double log_z = 0.0;
  Matrix node;  // n x 17 marginals
  Matrix edge;  // 17 x 17 expected transition counts summed over positions
};

ForwardBackward RunForwardBackward(const CrfWeights& w,
                                   const SentenceFeatures& x);

enum class Execution { kSerial, kParallel };

struct LossAndGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

// sum_i (log Z_i - score(gold_i)) + lambda/2 |w|^2 and its gradient.
// Forward-backward runs per sentence (in parallel for kParallel); the
// per-sentence results are then folded in in batch order, so both modes
// give bit-identical results. A gold sequence that uses a masked transition
// throws ValidationError.
LossAndGradient NllAndGradient(const CrfWeights& w,
                               std::span<const LabeledSentence> batch,
                               double l2_lambda,
                               Execution exec = Execution::kParallel);

// Viterbi over many sentences; result order follows input order.
std::vector<DecodeResult> DecodeBatch(const CrfWeights& w,
                                      std::span<const SentenceFeatures> xs,
                                      Execution exec = Execution::kParallel);

// log(sum exp(v)) over the entries, -inf for an empty or all -inf input.
double LogSumExp(std::span<const double> v);

}  // namespace sciconcept

#endif  // SCICONCEPT_CRF_HPP_
