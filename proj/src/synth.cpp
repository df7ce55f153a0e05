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

#include "sciconcept/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sciconcept/error.hpp"
#include "sciconcept/rng.hpp"

namespace sciconcept {

namespace {

using Words = std::vector<std::string>;

// A run of tokens inside a sentence plan; spans carry their concept.
struct Segment {
  Words words;
  std::optional<Concept> kind;
};
using SentencePlan = std::vector<Segment>;

Document Assemble(std::string id, Domain domain,
                  const std::vector<SentencePlan>& plans) {
  Document doc;
  doc.id = std::move(id);
  doc.domain = domain;
  for (const SentencePlan& plan : plans) {
    Words words;
    const int index = static_cast<int>(doc.sentences.size());
    for (const Segment& seg : plan) {
      const int start = static_cast<int>(words.size());
      words.insert(words.end(), seg.words.begin(), seg.words.end());
      if (seg.kind) {
        doc.annotations.push_back(SpanAnnotation{
            index, start, static_cast<int>(words.size()), *seg.kind});
      }
    }
    doc.sentences.push_back(MakeSentence(words));
  }
  NormalizeDocument(doc);
  ValidateDocument(doc);
  return doc;
}

// Index in [0, n) with probability proportional to 1 / (rank + 1)^s.
std::size_t Zipf(Rng& rng, std::size_t n, double s) {
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) total += 1.0 / std::pow(r + 1.0, s);
  double u = rng.UniformReal() * total;
  for (std::size_t r = 0; r < n; ++r) {
    u -= 1.0 / std::pow(r + 1.0, s);
    if (u < 0.0) return r;
  }
  return n - 1;
}

Words SplitWords(const std::string& s) {
  Words out;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Pronounceable pseudo-words, unique across one generator run.
class PseudoWords {
 public:
  explicit PseudoWords(Rng& rng) : rng_(rng) {}

  std::string Next() {
    static const std::string kOnsets = "bdfgklmnprstvz";
    static const std::string kVowels = "aeiou";
    for (;;) {
      const int syllables = 2 + static_cast<int>(rng_.UniformIndex(2));
      std::string w;
      for (int i = 0; i < syllables; ++i) {
        w += kOnsets[rng_.UniformIndex(kOnsets.size())];
        w += kVowels[rng_.UniformIndex(kVowels.size())];
      }
      if (used_.insert(w).second) return w;
    }
  }

  Words Many(int n) {
    Words out;
    for (int i = 0; i < n; ++i) out.push_back(Next());
    return out;
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

// ---------------------------------------------------------------------------
// STM-shaped fixture.

const std::array<Words, kNumConcepts>& HeadWords() {
  static const std::array<Words, kNumConcepts> kHeads = {
      Words{"growth", "reduction", "flooding", "oxidation", "diffusion",
            "accretion", "erosion", "migration", "expression", "degradation",
            "formation", "transport", "evaporation", "absorption", "emission",
            "deformation", "crystallization", "fermentation", "infection",
            "inflammation", "combustion", "convection", "precipitation",
            "corrosion", "adsorption", "nucleation", "replication",
            "transcription", "proliferation", "decomposition",
            "sedimentation", "weathering", "heating", "cooling", "melting",
            "mixing", "folding", "binding", "signaling", "uptake"},
      Words{"spectroscopy", "microscopy", "simulation", "regression",
            "algorithm", "survey", "sequencing", "modelling", "diffraction",
            "chromatography", "tomography", "interferometry", "imaging",
            "calibration", "optimization", "clustering", "classification",
            "estimation", "magnetoencephalography", "PCR", "ANOVA",
            "framework", "procedure", "protocol", "technique", "approach",
            "method", "scheme", "assay", "solver"},
      Words{"soil", "moon", "carbonator", "samples", "cells", "alloy",
            "water", "patients", "galaxies", "graph", "catalyst", "polymer",
            "sediment", "leaves", "seeds", "crops", "proteins", "enzymes",
            "bacteria", "mice", "rats", "steel", "concrete", "glass", "films",
            "nanoparticles", "electrodes", "solvent", "ions", "atoms",
            "stars", "planets", "clouds", "rocks", "minerals", "tissue",
            "blood", "network", "membrane", "specimens"},
      Words{"strength", "energy", "temperature", "rate", "velocity",
            "concentration", "yield", "density", "values", "pressure", "mass",
            "intensity", "frequency", "accuracy", "error", "ratio",
            "coefficient", "flux", "luminosity", "abundance", "content",
            "size", "thickness", "length", "duration", "efficiency",
            "capacity", "viscosity", "conductivity", "resistance", "variance",
            "correlation", "probability", "distribution", "time", "depth",
            "height", "weight", "score", "level"},
  };
  return kHeads;
}

const Words& SharedModifiers() {
  static const Words kMods = {
      "high",     "low",       "large",      "small",      "total",
      "local",    "global",    "thermal",    "chemical",   "physical",
      "spatial",  "temporal",  "linear",     "nonlinear",  "dynamic",
      "static",   "mean",      "relative",   "effective",  "initial",
      "final",    "structural", "mechanical", "optical",   "electrical",
      "magnetic", "organic",   "numerical",  "experimental", "novel"};
  return kMods;
}

const Words& DomainModifiers(Domain d) {
  static const std::array<Words, kNumDomains> kMods = {
      Words{"crop", "plant", "root", "grain", "wheat", "maize", "farm",
            "irrigated", "livestock", "fertilizer"},
      Words{"stellar", "solar", "lunar", "galactic", "planetary", "cosmic",
            "orbital", "interstellar", "dark", "redshift"},
      Words{"cellular", "genetic", "protein", "molecular", "microbial",
            "viral", "neural", "embryonic", "mitochondrial", "bacterial"},
      Words{"aqueous", "ionic", "catalytic", "acidic", "polymeric",
            "metallic", "oxide", "hydrogen", "carbon", "reactive"},
      Words{"parallel", "distributed", "random", "binary", "sparse",
            "probabilistic", "computational", "algorithmic", "online",
            "recursive"},
      Words{"seismic", "oceanic", "atmospheric", "coastal", "glacial",
            "tectonic", "volcanic", "hydrological", "climatic", "3D"},
      Words{"rotational", "composite", "turbine", "hydraulic", "vibration",
            "aerodynamic", "control", "fatigue", "welded", "wind"},
      Words{"tensile", "crystalline", "amorphous", "ceramic", "nanoscale",
            "elastic", "plastic", "porous", "layered", "annealed"},
      Words{"polynomial", "finite", "algebraic", "differential", "discrete",
            "asymptotic", "integral", "stochastic", "convex", "topological"},
      Words{"clinical", "cardiac", "chronic", "acute", "pediatric",
            "surgical", "cerebral", "renal", "tumor", "postoperative"},
  };
  return kMods[static_cast<int>(d)];
}

// Trigger words that usually precede a concept of each type.
const std::array<Words, kNumConcepts>& Triggers() {
  static const std::array<Words, kNumConcepts> kTriggers = {
      Words{"during", "through", "undergoes", "causes", "after", "drives"},
      Words{"using", "via", "applying", "employing", "with", "by"},
      Words{"of", "in", "from", "on", "within", "for"},
      Words{"measured", "estimated", "increased", "reported", "computed",
            "lower"},
  };
  return kTriggers;
}

const Words& GenericTriggers() {
  static const Words kGeneric = {"the", "and", "a", "its", "their"};
  return kGeneric;
}

const Words& Connectors() {
  static const Words kConnectors = {"and", ",", "is", "was", "which", "that",
                                    "while", "as"};
  return kConnectors;
}

const std::vector<std::string>& Openers() {
  static const std::vector<std::string> kOpeners = {
      "We", "Here we", "In this study ,", "The results show that",
      "Moreover ,", "We show that", "Finally ,", "This paper", "Our",
      "It is found that"};
  return kOpeners;
}

const Words& FillerWords() {
  static const Words kFiller = {
      "also", "further", "significantly", "here", "then", "both", "these",
      "strongly", "clearly", "generally", "often", "new", "several",
      "different", "previous", "recent", "important", "such", "various",
      "first", "however", "thus", "overall", "still"};
  return kFiller;
}

// Nouns that are never concept heads; used for unannotated distractors.
const Words& DistractorNouns() {
  static const Words kNouns = {"number", "insight", "work", "role", "part",
                               "way", "case", "aspect", "study", "issue"};
  return kNouns;
}

Words MakePhrase(Concept c, Domain d, Rng& rng) {
  const Words& heads = HeadWords()[static_cast<int>(c)];
  Words phrase;
  const double u = rng.UniformReal();
  const int modifiers = u < 0.4 ? 0 : (u < 0.8 ? 1 : 2);
  for (int i = 0; i < modifiers; ++i) {
    const Words& pool = rng.Bernoulli(0.55) ? DomainModifiers(d)
                                            : SharedModifiers();
    phrase.push_back(pool[Zipf(rng, pool.size(), 0.6)]);
  }
  phrase.push_back(heads[Zipf(rng, heads.size(), 0.9)]);
  return phrase;
}

std::string Key(const Words& words) {
  std::string k;
  for (const std::string& w : words) {
    if (!k.empty()) k += ' ';
    k += ToLowerAscii(w);
  }
  return k;
}

// Distinct phrases per concept: proportional to the concept counts, at
// least one each (when the concept occurs), summing to the distinct total.
std::array<int, kNumConcepts> AllocateUnique(const DomainProfile& p) {
  std::array<int, kNumConcepts> u{};
  int sum = 0;
  for (int c = 0; c < kNumConcepts; ++c) {
    if (p.per_concept[c] == 0) continue;
    u[c] = std::clamp(static_cast<int>(std::floor(
                          static_cast<double>(p.unique_phrases) *
                          p.per_concept[c] / p.phrases)),
                      1, p.per_concept[c]);
    sum += u[c];
  }
  // Hand out the remainder to concepts with room, largest first.
  while (sum != p.unique_phrases) {
    int best = -1;
    for (int c = 0; c < kNumConcepts; ++c) {
      const bool room = sum < p.unique_phrases ? u[c] < p.per_concept[c]
                                               : u[c] > 1;
      if (room && (best < 0 || p.per_concept[c] > p.per_concept[best])) {
        best = c;
      }
    }
    if (best < 0) throw Error("stm fixture: infeasible profile", ExitCode::kValidation);
    u[best] += sum < p.unique_phrases ? 1 : -1;
    sum += sum < p.unique_phrases ? 1 : -1;
  }
  return u;
}

int PlanTokens(const SentencePlan& plan) {
  int n = 0;
  for (const Segment& s : plan) n += static_cast<int>(s.words.size());
  return n;
}

std::vector<Document> MakeStmDomain(const DomainProfile& p, Rng& rng) {
  const auto unique = AllocateUnique(p);

  // Phrase inventory, distinct lower-cased surfaces across all concepts.
  std::array<std::vector<Words>, kNumConcepts> inventory;
  std::set<std::string> seen;
  for (int c = 0; c < kNumConcepts; ++c) {
    int attempts = 0;
    while (static_cast<int>(inventory[c].size()) < unique[c]) {
      Words phrase = MakePhrase(static_cast<Concept>(c), p.domain, rng);
      if (seen.insert(Key(phrase)).second) inventory[c].push_back(phrase);
      if (++attempts > 1000000) {
        throw Error("stm fixture: phrase inventory exhausted",
                    ExitCode::kValidation);
      }
    }
  }

  // Every distinct phrase once, repeats drawn with a Zipf bias.
  std::vector<std::pair<int, int>> occurrences;
  for (int c = 0; c < kNumConcepts; ++c) {
    for (int i = 0; i < unique[c]; ++i) occurrences.emplace_back(c, i);
    for (int i = unique[c]; i < p.per_concept[c]; ++i) {
      occurrences.emplace_back(
          c, static_cast<int>(Zipf(rng, inventory[c].size(), 1.0)));
    }
  }
  rng.Shuffle(occurrences);

  // Sentences of phrases, each behind a trigger. Dense domains retry with
  // tighter packing until the token budget holds.
  const int budget = p.avg_tokens * p.documents;
  const int total = static_cast<int>(occurrences.size());
  std::vector<std::vector<SentencePlan>> docs;
  int used_tokens = 0;
  for (int packing = 0;; ++packing) {
    if (packing > 3) {
      throw Error("stm fixture: token budget of " +
                      std::string(DomainCode(p.domain)) + " exceeded",
                  ExitCode::kValidation);
    }
    Rng local = rng;
    docs.assign(p.documents, {});
    used_tokens = 0;
    const double opener = 1.0 - 0.3 * packing;
    const double connector = 0.5 - 0.15 * packing;
    const int min_count = 1 + packing;
    for (int d = 0; d < p.documents; ++d) {
      int k = total * d / p.documents;
      const int stop = total * (d + 1) / p.documents;
      while (k < stop) {
        SentencePlan plan;
        if (local.Bernoulli(opener)) {
          plan.push_back(
              Segment{SplitWords(local.Pick(Openers())), std::nullopt});
        }
        const int count = std::min(
            stop - k, min_count + static_cast<int>(local.UniformIndex(4)));
        for (int j = 0; j < count; ++j, ++k) {
          const auto [c, i] = occurrences[k];
          if (j > 0 && local.Bernoulli(connector)) {
            plan.push_back(Segment{{local.Pick(Connectors())}, std::nullopt});
          }
          const Words& trig = local.Bernoulli(0.75) ? Triggers()[c]
                                                    : GenericTriggers();
          plan.push_back(Segment{{local.Pick(trig)}, std::nullopt});
          plan.push_back(Segment{inventory[c][i], static_cast<Concept>(c)});
        }
        plan.push_back(Segment{{"."}, std::nullopt});
        used_tokens += PlanTokens(plan);
        docs[d].push_back(std::move(plan));
      }
    }
    if (used_tokens <= budget) {
      rng = local;
      break;
    }
  }

  // Pad with filler and distractors to the exact token budget.
  int leftover = budget - used_tokens;
  while (leftover > 0) {
    auto& doc = docs[rng.UniformIndex(docs.size())];
    auto& plan = doc[rng.UniformIndex(doc.size())];
    // Gaps after the opener and before the final ".".
    const std::size_t gap = 1 + rng.UniformIndex(plan.size() - 1);
    Segment filler;
    if (leftover >= 2 && rng.Bernoulli(0.15)) {
      const Words& mods = rng.Bernoulli(0.5) ? DomainModifiers(p.domain)
                                             : SharedModifiers();
      filler.words = {rng.Pick(mods), rng.Pick(DistractorNouns())};
    } else {
      filler.words = {rng.Pick(FillerWords())};
    }
    // Keep triggers adjacent to their span.
    if (plan[gap].kind) continue;
    leftover -= static_cast<int>(filler.words.size());
    plan.insert(plan.begin() + static_cast<std::ptrdiff_t>(gap),
                std::move(filler));
  }

  std::vector<Document> out;
  for (int d = 0; d < p.documents; ++d) {
    char id[32];
    std::snprintf(id, sizeof(id), "%s-%02d",
                  std::string(DomainCode(p.domain)).c_str(), d + 1);
    out.push_back(Assemble(id, p.domain, docs[d]));
  }
  return out;
}

}  // namespace

const std::array<DomainProfile, kNumDomains>& StmProfiles() {
  // Per-concept order: Process, Method, Material, Data.
  static const std::array<DomainProfile, kNumDomains> kProfiles = {{
      {Domain::kAgr, 11, 333, 741, 631, {252, 28, 292, 169}},
      {Domain::kAst, 11, 382, 791, 663, {241, 19, 296, 235}},
      {Domain::kBio, 11, 273, 649, 511, {281, 15, 291, 62}},
      {Domain::kChe, 11, 217, 483, 444, {149, 27, 188, 119}},
      {Domain::kCS, 11, 253, 553, 482, {220, 66, 102, 165}},
      {Domain::kES, 11, 321, 698, 633, {243, 9, 249, 197}},
      {Domain::kEng, 11, 303, 741, 618, {248, 27, 208, 258}},
      {Domain::kMS, 11, 282, 574, 493, {178, 27, 231, 138}},
      {Domain::kMat, 11, 140, 297, 287, {56, 7, 51, 183}},
      {Domain::kMed, 11, 274, 600, 518, {244, 33, 191, 132}},
  }};
  return kProfiles;
}

Corpus MakeStmFixture(std::uint64_t seed) {
  Corpus corpus;
  for (const DomainProfile& p : StmProfiles()) {
    Rng rng = Rng::Stream(seed, "stm:" + std::string(DomainCode(p.domain)));
    for (Document& d : MakeStmDomain(p, rng)) corpus.push_back(std::move(d));
  }
  return corpus;
}

Corpus MakeSeparableCorpus(int sentences, std::uint64_t seed) {
  Rng rng = Rng::Stream(seed, "separable");
  PseudoWords pseudo(rng);
  const Words content = pseudo.Many(80);
  const Words filler = {"the", "of", "and", "in", "is", "was", "for", "to",
                        "with", "on", "we", "this", "that", "by", "as", "it"};
  const std::array<std::string, kNumConcepts> triggers = {"trigp", "trigm",
                                                          "trigt", "trigd"};
  constexpr int kPerDocument = 10;
  const int docs = (sentences + kPerDocument - 1) / kPerDocument;
  Corpus corpus;
  int remaining = sentences;
  for (int d = 0; d < docs; ++d) {
    std::vector<SentencePlan> plans;
    for (int s = 0; s < kPerDocument && remaining > 0; ++s, --remaining) {
      SentencePlan plan;
      auto add_filler = [&]() {
        Segment seg;
        const int k = 1 + static_cast<int>(rng.UniformIndex(3));
        for (int i = 0; i < k; ++i) seg.words.push_back(rng.Pick(filler));
        plan.push_back(std::move(seg));
      };
      add_filler();
      const int spans = 1 + static_cast<int>(rng.UniformIndex(3));
      for (int j = 0; j < spans; ++j) {
        const int c = static_cast<int>(rng.UniformIndex(kNumConcepts));
        plan.push_back(Segment{{triggers[c]}, std::nullopt});
        Segment span;
        span.kind = static_cast<Concept>(c);
        const int len = 1 + static_cast<int>(rng.UniformIndex(3));
        for (int i = 0; i < len; ++i) span.words.push_back(rng.Pick(content));
        plan.push_back(std::move(span));
        add_filler();
      }
      plan.push_back(Segment{{"."}, std::nullopt});
      plans.push_back(std::move(plan));
    }
    char id[32];
    std::snprintf(id, sizeof(id), "SEP-%04d", d + 1);
    corpus.push_back(Assemble(id, kAllDomains[d % kNumDomains], plans));
  }
  return corpus;
}

Corpus MakeDifficultyCorpus(const DifficultyOptions& options) {
  Rng rng = Rng::Stream(options.seed, "difficulty");
  PseudoWords pseudo(rng);
  const Words glue = {"and", "with", "near", "or", "then", "versus", "plus"};
  constexpr int kDocuments = 11;

  Corpus corpus;
  for (Domain dom : kAllDomains) {
    const bool hard = std::find(kHardDomains.begin(), kHardDomains.end(),
                                dom) != kHardDomains.end();
    std::array<Words, kNumConcepts> vocab;
    for (auto& v : vocab) {
      v = pseudo.Many(hard ? options.hard_vocabulary : 3);
    }
    auto word = [&](Concept c) -> const std::string& {
      const Words& v = vocab[static_cast<int>(c)];
      return hard ? v[Zipf(rng, v.size(), 0.8)] : rng.Pick(v);
    };

    for (int d = 0; d < kDocuments; ++d) {
      std::vector<SentencePlan> plans;
      for (int s = 0; s < options.sentences_per_document; ++s) {
        SentencePlan plan;
        if (hard) {
          const int spans = 3 + static_cast<int>(rng.UniformIndex(2));
          for (int j = 0; j < spans; ++j) {
            if (j > 0) plan.push_back(Segment{{rng.Pick(glue)}, std::nullopt});
            const auto c = static_cast<Concept>(rng.UniformIndex(kNumConcepts));
            Segment span;
            span.kind = c;
            span.words.push_back(word(c));
            if (rng.Bernoulli(0.4)) span.words.push_back(word(c));
            plan.push_back(std::move(span));
          }
        } else {
          switch (rng.UniformIndex(3)) {
            case 0:
              plan = {Segment{{"the"}, std::nullopt},
                      Segment{{word(Concept::kMaterial)}, Concept::kMaterial},
                      Segment{{"was", "measured", "using"}, std::nullopt},
                      Segment{{word(Concept::kMethod)}, Concept::kMethod}};
              break;
            case 1:
              plan = {Segment{{word(Concept::kProcess)}, Concept::kProcess},
                      Segment{{"of"}, std::nullopt},
                      Segment{{word(Concept::kMaterial)}, Concept::kMaterial},
                      Segment{{"increased"}, std::nullopt},
                      Segment{{word(Concept::kData)}, Concept::kData}};
              break;
            default:
              plan = {Segment{{"we", "report"}, std::nullopt},
                      Segment{{word(Concept::kData)}, Concept::kData},
                      Segment{{"for"}, std::nullopt},
                      Segment{{word(Concept::kMaterial)}, Concept::kMaterial}};
              break;
          }
        }
        plan.push_back(Segment{{"."}, std::nullopt});
        plans.push_back(std::move(plan));
      }
      char id[32];
      std::snprintf(id, sizeof(id), "%s-%02d",
                    std::string(DomainCode(dom)).c_str(), d + 1);
      corpus.push_back(Assemble(id, dom, plans));
    }
  }
  return corpus;
}

}  // namespace sciconcept
