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

#include "sciconcept/model.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "sciconcept/error.hpp"
#include "sciconcept/io.hpp"
#include "sciconcept/metrics.hpp"
#include "sciconcept/rng.hpp"

namespace sciconcept {

namespace {

using nlohmann::json;

constexpr const char* kFormatName = "sciconcept-crf";

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

json ConfigToJson(const TrainConfig& c) {
  return json{{"l2_lambda", c.l2_lambda},
              {"max_epochs", c.max_epochs},
              {"tolerance", c.tolerance},
              {"lbfgs_memory", c.lbfgs_memory},
              {"min_feature_count", c.min_feature_count},
              {"early_stopping", c.early_stopping},
              {"constrained", c.constrained},
              {"seed", c.seed}};
}

TrainConfig ConfigFromJson(const json& j) {
  TrainConfig c;
  c.l2_lambda = j.at("l2_lambda").get<double>();
  c.max_epochs = j.at("max_epochs").get<int>();
  c.tolerance = j.at("tolerance").get<double>();
  c.lbfgs_memory = j.at("lbfgs_memory").get<int>();
  c.min_feature_count = j.at("min_feature_count").get<int>();
  c.early_stopping = j.at("early_stopping").get<bool>();
  c.constrained = j.at("constrained").get<bool>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

std::vector<SentenceFeatures> FeaturesOnly(
    const std::vector<LabeledSentence>& sentences) {
  std::vector<SentenceFeatures> out;
  out.reserve(sentences.size());
  for (const LabeledSentence& s : sentences) out.push_back(s.features);
  return out;
}

// Dev span F1 for a given parameter vector.
double DevF1(const CrfWeights& w, const Corpus& dev,
             const std::vector<SentenceFeatures>& dev_features) {
  const auto decoded = DecodeBatch(w, dev_features);
  std::vector<std::vector<TagSequence>> predicted;
  std::size_t k = 0;
  for (const Document& d : dev) {
    auto& doc_tags = predicted.emplace_back();
    for (std::size_t s = 0; s < d.sentences.size(); ++s) {
      doc_tags.push_back(decoded[k++].tags);
    }
  }
  return Evaluate(dev, predicted).overall.f1();
}

}  // namespace

std::string TrainConfig::Canonical() const { return ConfigToJson(*this).dump(); }

std::string TrainConfig::Hash() const { return Hex64(Fnv1a64(Canonical())); }

std::vector<std::vector<TagSequence>> CrfModel::TagCorpus(
    const Corpus& corpus) const {
  std::vector<SentenceFeatures> xs;
  for (const Document& d : corpus) {
    for (const Sentence& s : d.sentences) xs.push_back(Features(s));
  }
  const auto decoded = DecodeBatch(weights_, xs);
  std::vector<std::vector<TagSequence>> out;
  std::size_t k = 0;
  for (const Document& d : corpus) {
    auto& doc_tags = out.emplace_back();
    for (std::size_t s = 0; s < d.sentences.size(); ++s) {
      doc_tags.push_back(decoded[k++].tags);
    }
  }
  return out;
}

std::vector<LabeledSentence> EncodeCorpus(const Corpus& corpus,
                                          const FeatureExtractor& extractor,
                                          const FeatureIndex& index) {
  std::vector<LabeledSentence> out;
  for (const Document& d : corpus) {
    const auto tags = DocumentTags(d);
    for (std::size_t s = 0; s < d.sentences.size(); ++s) {
      out.push_back(LabeledSentence{extractor.Extract(d.sentences[s], index),
                                    tags[s]});
    }
  }
  return out;
}

TrainedModel Train(const Corpus& train, const Corpus& dev,
                   const FeatureIndex& index,
                   const FeatureExtractor& extractor,
                   const TrainConfig& config) {
  if (config.tolerance <= 0.0) {
    throw UsageError("training tolerance must be positive");
  }
  if (config.l2_lambda < 0.0) throw UsageError("l2_lambda must be >= 0");
  const std::vector<LabeledSentence> batch =
      EncodeCorpus(train, extractor, index);
  if (batch.empty()) throw ValidationError("empty training set");

  const ConstraintMask mask =
      config.constrained ? ConstraintMask::Bilou() : ConstraintMask::None();
  CrfWeights weights(index.size(), mask);
  CrfWeights scratch = weights;

  const bool track_dev = config.early_stopping && CountSentences(dev) > 0;
  std::vector<SentenceFeatures> dev_features;
  if (track_dev) dev_features = FeaturesOnly(EncodeCorpus(dev, extractor, index));

  TrainReport report;
  std::vector<double> best(weights.params().begin(), weights.params().end());
  if (track_dev) report.best_dev_f1 = DevF1(weights, dev, dev_features);

  const Objective objective = [&](std::span<const double> x,
                                  std::span<double> g) {
    std::copy(x.begin(), x.end(), scratch.params().begin());
    LossAndGradient lg = NllAndGradient(scratch, batch, config.l2_lambda);
    std::copy(lg.gradient.begin(), lg.gradient.end(), g.begin());
    return lg.loss;
  };
  const IterationCallback callback = [&](int iter, std::span<const double> x,
                                         double f, double) {
    report.loss.push_back(f);
    if (track_dev) {
      std::copy(x.begin(), x.end(), scratch.params().begin());
      const double f1 = DevF1(scratch, dev, dev_features);
      report.dev_f1.push_back(f1);
      if (f1 > report.best_dev_f1) {
        report.best_dev_f1 = f1;
        report.best_epoch = iter;
        best.assign(x.begin(), x.end());
      }
    }
    return true;
  };

  LbfgsOptions options;
  options.memory = config.lbfgs_memory;
  options.max_iterations = config.max_epochs;
  options.tolerance = config.tolerance;
  std::vector<double> x(weights.params().begin(), weights.params().end());
  const LbfgsResult result = MinimizeLbfgs(objective, x, options, callback);
  report.epochs = result.iterations;
  report.status = result.status;

  if (track_dev) {
    std::copy(best.begin(), best.end(), weights.params().begin());
  } else {
    std::copy(x.begin(), x.end(), weights.params().begin());
    report.best_epoch = result.iterations;
  }
  return TrainedModel{CrfModel(index, extractor, std::move(weights), config),
                      std::move(report)};
}

TrainedModel Train(const Corpus& train, const Corpus& dev,
                   const FeatureExtractor& extractor,
                   const TrainConfig& config) {
  const FeatureIndex index =
      BuildFeatureIndex(train, extractor, config.min_feature_count);
  return Train(train, dev, index, extractor, config);
}

double SpanF1Of(const CrfModel& model, const Corpus& corpus) {
  return Evaluate(corpus, model.TagCorpus(corpus)).overall.f1();
}

std::string SerializeModel(const CrfModel& model) {
  const CrfWeights& w = model.weights();
  json j;
  j["format"] = kFormatName;
  j["version"] = kModelFormatVersion;
  json tags = json::array();
  for (Tag t = 0; t < kNumTags; ++t) tags.push_back(TagName(t));
  j["tags"] = std::move(tags);
  j["config"] = ConfigToJson(model.config());
  j["config_hash"] = model.config().Hash();
  j["features"] = model.index().strings();

  json gazetteer = json::array();
  for (const auto& [phrase, kind] : model.extractor().gazetteer().phrases()) {
    gazetteer.push_back({{"concept", ConceptName(kind)}, {"phrase", phrase}});
  }
  j["gazetteer"] = std::move(gazetteer);
  json clusters = json::object();
  for (const auto& [token, cluster] : model.extractor().clusters().entries()) {
    clusters[token] = cluster;
  }
  j["clusters"] = std::move(clusters);

  const ConstraintMask& mask = w.mask();
  json mask_j;
  mask_j["transition"] = json::array();
  for (Tag a = 0; a < kNumTags; ++a) {
    json row = json::array();
    for (Tag b = 0; b < kNumTags; ++b) row.push_back(mask.allows(a, b) ? 1 : 0);
    mask_j["transition"].push_back(std::move(row));
  }
  mask_j["start"] = json::array();
  mask_j["end"] = json::array();
  for (Tag a = 0; a < kNumTags; ++a) {
    mask_j["start"].push_back(mask.start[a] ? 1 : 0);
    mask_j["end"].push_back(mask.end[a] ? 1 : 0);
  }
  j["mask"] = std::move(mask_j);

  json emission = json::array();
  for (int f = 0; f < w.num_features(); ++f) {
    json row = json::array();
    for (Tag t = 0; t < kNumTags; ++t) row.push_back(w.emission(f, t));
    emission.push_back(std::move(row));
  }
  j["emission"] = std::move(emission);
  json transition = json::array();
  for (Tag a = 0; a < kNumTags; ++a) {
    json row = json::array();
    for (Tag b = 0; b < kNumTags; ++b) row.push_back(w.transition(a, b));
    transition.push_back(std::move(row));
  }
  j["transition"] = std::move(transition);
  json start = json::array();
  json end = json::array();
  for (Tag t = 0; t < kNumTags; ++t) {
    start.push_back(w.start(t));
    end.push_back(w.end(t));
  }
  j["start"] = std::move(start);
  j["end"] = std::move(end);
  return j.dump() + "\n";
}

CrfModel DeserializeModel(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": malformed model file: " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormatName) {
      throw ParseError(source + ": not a " + std::string(kFormatName) +
                       " model file");
    }
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw ParseError(source + ": model format version " +
                       std::to_string(version) + ", expected " +
                       std::to_string(kModelFormatVersion));
    }
    const auto& tags = j.at("tags");
    if (tags.size() != kNumTags) throw ParseError(source + ": tag set differs");
    for (Tag t = 0; t < kNumTags; ++t) {
      if (tags[t].get<std::string>() != TagName(t)) {
        throw ParseError(source + ": tag order differs at index " +
                         std::to_string(t));
      }
    }
    const TrainConfig config = ConfigFromJson(j.at("config"));
    if (j.at("config_hash").get<std::string>() != config.Hash()) {
      throw ParseError(source + ": config hash mismatch");
    }
    FeatureIndex index(j.at("features").get<std::vector<std::string>>());

    Gazetteer gazetteer;
    for (const json& g : j.at("gazetteer")) {
      const auto kind = ParseConcept(g.at("concept").get<std::string>());
      if (!kind) throw ParseError(source + ": bad gazetteer concept");
      gazetteer.Add(*kind, g.at("phrase").get<std::vector<std::string>>());
    }
    ClusterMap clusters;
    for (const auto& [token, cluster] : j.at("clusters").items()) {
      clusters.Add(token, cluster.get<std::string>());
    }

    ConstraintMask mask;
    const json& m = j.at("mask");
    for (Tag a = 0; a < kNumTags; ++a) {
      mask.start[a] = m.at("start").at(a).get<int>() != 0;
      mask.end[a] = m.at("end").at(a).get<int>() != 0;
      for (Tag b = 0; b < kNumTags; ++b) {
        mask.transition[a * kNumTags + b] =
            m.at("transition").at(a).at(b).get<int>() != 0;
      }
    }
    CrfWeights w(index.size(), mask);
    const json& emission = j.at("emission");
    if (static_cast<int>(emission.size()) != index.size()) {
      throw ParseError(source + ": emission table does not match features");
    }
    for (int f = 0; f < index.size(); ++f) {
      for (Tag t = 0; t < kNumTags; ++t) {
        w.emission(f, t) = emission[f].at(t).get<double>();
      }
    }
    for (Tag a = 0; a < kNumTags; ++a) {
      for (Tag b = 0; b < kNumTags; ++b) {
        w.transition(a, b) = j.at("transition").at(a).at(b).get<double>();
      }
      w.start(a) = j.at("start").at(a).get<double>();
      w.end(a) = j.at("end").at(a).get<double>();
    }
    return CrfModel(std::move(index),
                    FeatureExtractor(std::move(gazetteer), std::move(clusters)),
                    std::move(w), config);
  } catch (const json::exception& e) {
    throw ParseError(source + ": invalid model file: " + e.what());
  }
}

void SaveModel(const std::filesystem::path& path, const CrfModel& model) {
  WriteFileAtomic(path, SerializeModel(model));
}

CrfModel LoadModel(const std::filesystem::path& path) {
  return DeserializeModel(ReadFile(path), path.string());
}

std::string ModelHash(const CrfModel& model) {
  return Hex64(Fnv1a64(SerializeModel(model)));
}

}  // namespace sciconcept
