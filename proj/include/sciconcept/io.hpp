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

// Corpus readers and writers.
//
// JSONL: one document per line,
//   {"id": "...", "domain": "CS",
//    "sentences": [{"tokens": [{"text": "We", "start": 0, "end": 2}, ...]}],
//    "annotations": [{"sentence": 0, "start": 2, "end": 4,
//                     "concept": "Data"}]}
// Span offsets are token indices, end exclusive.
//
// CoNLL: "# id = <id>\tdomain = <code>" starts a document, then one
// "TOKEN\tTAG" line per token with BILOU tags, blank line after each
// sentence. Character offsets are reconstructed as if tokens were joined by
// single spaces.

#ifndef SCICONCEPT_IO_HPP_
#define SCICONCEPT_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "sciconcept/corpus.hpp"

namespace sciconcept {

enum class CorpusFormat { kJsonl, kConll };

CorpusFormat ParseCorpusFormat(std::string_view name);

// Format from the file extension: ".conll" / ".txt" -> CoNLL, else JSONL.
CorpusFormat GuessCorpusFormat(const std::filesystem::path& path);

// `source` names the stream in error messages.
Corpus ReadJsonlCorpus(std::istream& in, const std::string& source);
Corpus ReadConllCorpus(std::istream& in, const std::string& source);
Corpus LoadCorpus(const std::filesystem::path& path, CorpusFormat format);

void WriteJsonlCorpus(std::ostream& out, const Corpus& corpus);
void WriteConllCorpus(std::ostream& out, const Corpus& corpus);
void SaveCorpus(const std::filesystem::path& path, const Corpus& corpus,
                CorpusFormat format);

// Writes through a temporary sibling file and renames it into place.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace sciconcept

#endif  // SCICONCEPT_IO_HPP_
