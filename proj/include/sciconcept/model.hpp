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

// A trained tagger: feature templates + index + CRF weights, its training,
// and the versioned model file.

#ifndef SCICONCEPT_MODEL_HPP_
#define SCICONCEPT_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sciconcept/crf.hpp"
#include "sciconcept/features.hpp"
#include "sciconcept/lbfgs.hpp"

namespace sciconcept {

struct TrainConfig {
  double l2_lambda = 1.0;
  int max_epochs = 300;
  double tolerance = 1e-5;
  int lbfgs_memory = 10;
  int min_feature_count = 1;
  // Keep the weights with the best dev span F1 seen.
  bool early_stopping = true;
  bool constrained = true;
  std::uint64_t seed = 0;

  // Canonical text form; the model file stores its FNV-1a hash.
  std::string Canonical() const;
  std::string Hash() const;
  bool operator==(const TrainConfig&) const = default;
};

class CrfModel {
 public:
  CrfModel() = default;
  CrfModel(FeatureIndex index, FeatureExtractor extractor, CrfWeights weights,
           TrainConfig config)
      : index_(std::move(index)),
        extractor_(std::move(extractor)),
        weights_(std::move(weights)),
        config_(config) {}

  const FeatureIndex& index() const { return index_; }
  const FeatureExtractor& extractor() const { return extractor_; }
  const CrfWeights& weights() const { return weights_; }
  CrfWeights& mutable_weights() { return weights_; }
  const TrainConfig& config() const { return config_; }

  SentenceFeatures Features(const Sentence& sentence) const {
    return extractor_.Extract(sentence, index_);
  }
  DecodeResult Decode(const Sentence& sentence) const {
    return ViterbiDecode(weights_, Features(sentence));
  }
  // Viterbi tags of every sentence, [document][sentence].
  std::vector<std::vector<TagSequence>> TagCorpus(const Corpus& corpus) const;

 private:
  FeatureIndex index_;
  FeatureExtractor extractor_;
  CrfWeights weights_;
  TrainConfig config_;
};

// Feature vectors and gold tags of every sentence, document order.
std::vector<LabeledSentence> EncodeCorpus(const Corpus& corpus,
                                          const FeatureExtractor& extractor,
                                          const FeatureIndex& index);

struct TrainReport {
  int epochs = 0;
  int best_epoch = 0;  // 0 = initial weights
  double best_dev_f1 = 0.0;
  LbfgsStatus status = LbfgsStatus::kMaxIterations;
  std::vector<double> loss;    // regularized NLL after each accepted step
  std::vector<double> dev_f1;  // dev span F1 after each accepted step
};

struct TrainedModel {
  CrfModel model;
  TrainReport report;
};

// Full-batch L-BFGS on the regularized NLL from zero weights. Stops on the
// gradient tolerance or max_epochs; with early stopping and a non-empty dev
// corpus returns the weights with the best dev span F1 (earliest on ties).
// Throws ValidationError for an empty training set and NumericalError on
// NaN/Inf.
TrainedModel Train(const Corpus& train, const Corpus& dev,
                   const FeatureIndex& index,
                   const FeatureExtractor& extractor,
                   const TrainConfig& config);

// Builds the feature index from `train` (config.min_feature_count) first.
TrainedModel Train(const Corpus& train, const Corpus& dev,
                   const FeatureExtractor& extractor,
                   const TrainConfig& config);

// Span F1 of `model` on `corpus` (overall, micro).
double SpanF1Of(const CrfModel& model, const Corpus& corpus);

inline constexpr int kModelFormatVersion = 1;

// JSON container: format tag, version, tag order, training config and its
// hash, feature strings, gazetteer and cluster resources, constraint mask
// and weights. Doubles are written in shortest round-trip form, so
// Serialize(Deserialize(s)) == s.
std::string SerializeModel(const CrfModel& model);
// Throws ParseError on malformed input or a version/tag-order mismatch.
CrfModel DeserializeModel(const std::string& text, const std::string& source);

void SaveModel(const std::filesystem::path& path, const CrfModel& model);
CrfModel LoadModel(const std::filesystem::path& path);

// Hex FNV-1a hash of the serialized model.
std::string ModelHash(const CrfModel& model);

}  // namespace sciconcept

#endif  // SCICONCEPT_MODEL_HPP_
