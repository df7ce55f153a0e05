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

#include "sciconcept/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "sciconcept/bilou.hpp"
#include "sciconcept/error.hpp"

namespace sciconcept {

namespace {

using nlohmann::json;

std::string Where(const std::string& source, int line) {
  return source + ":" + std::to_string(line);
}

const json& Field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  return *it;
}

int IntField(const json& obj, const char* key, const std::string& where) {
  const json& v = Field(obj, key, where);
  if (!v.is_number_integer()) {
    throw ParseError(where + ": field '" + key + "' is not an integer");
  }
  return v.get<int>();
}

std::string StringField(const json& obj, const char* key,
                        const std::string& where) {
  const json& v = Field(obj, key, where);
  if (!v.is_string()) {
    throw ParseError(where + ": field '" + key + "' is not a string");
  }
  return v.get<std::string>();
}

Domain DomainOrThrow(const std::string& code, const std::string& where) {
  const auto d = ParseDomain(code);
  if (!d) throw ValidationError(where + ": unknown domain code '" + code + "'");
  return *d;
}

Document ParseJsonDocument(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": record is not an object");
  Document doc;
  doc.id = StringField(j, "id", where);
  doc.domain = DomainOrThrow(StringField(j, "domain", where), where);
  const json& sentences = Field(j, "sentences", where);
  if (!sentences.is_array()) {
    throw ParseError(where + ": 'sentences' is not an array");
  }
  for (const json& s : sentences) {
    const json& tokens = Field(s, "tokens", where);
    if (!tokens.is_array()) throw ParseError(where + ": 'tokens' not an array");
    Sentence sent;
    for (const json& t : tokens) {
      sent.tokens.push_back(Token{StringField(t, "text", where),
                                  IntField(t, "start", where),
                                  IntField(t, "end", where)});
    }
    doc.sentences.push_back(std::move(sent));
  }
  if (const auto it = j.find("annotations"); it != j.end()) {
    if (!it->is_array()) {
      throw ParseError(where + ": 'annotations' is not an array");
    }
    for (const json& a : *it) {
      const std::string label = StringField(a, "concept", where);
      const auto kind = ParseConcept(label);
      if (!kind) {
        throw ValidationError(where + ": document '" + doc.id +
                              "': unknown concept label '" + label + "'");
      }
      doc.annotations.push_back(SpanAnnotation{IntField(a, "sentence", where),
                                               IntField(a, "start", where),
                                               IntField(a, "end", where),
                                               *kind});
    }
  }
  NormalizeDocument(doc);
  ValidateDocument(doc);
  return doc;
}

std::string StripCr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Parses "# id = X\tdomain = Y".
void ParseConllHeader(const std::string& line, const std::string& where,
                      Document& doc) {
  std::string body = line.substr(1);
  std::string id;
  std::string domain;
  std::stringstream fields(body);
  std::string field;
  while (std::getline(fields, field, '\t')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(' ');
      const auto e = s.find_last_not_of(' ');
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(field.substr(0, eq));
    const std::string value = trim(field.substr(eq + 1));
    if (key == "id") id = value;
    if (key == "domain") domain = value;
  }
  if (id.empty()) throw ParseError(where + ": document header without id");
  if (domain.empty()) {
    throw ParseError(where + ": document header without domain");
  }
  doc.id = id;
  doc.domain = DomainOrThrow(domain, where);
}

}  // namespace

CorpusFormat ParseCorpusFormat(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "conll") return CorpusFormat::kConll;
  throw UsageError("unknown corpus format '" + std::string(name) +
                   "' (expected jsonl or conll)");
}

CorpusFormat GuessCorpusFormat(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".conll" || ext == ".txt") ? CorpusFormat::kConll
                                             : CorpusFormat::kJsonl;
}

Corpus ReadJsonlCorpus(std::istream& in, const std::string& source) {
  Corpus corpus;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = StripCr(line);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = Where(source, line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(where + ": malformed JSON: " + e.what());
    }
    corpus.push_back(ParseJsonDocument(j, where));
  }
  return corpus;
}

Corpus ReadConllCorpus(std::istream& in, const std::string& source) {
  Corpus corpus;
  std::string line;
  int line_no = 0;
  bool have_doc = false;
  Document doc;
  std::vector<std::string> words;
  TagSequence tags;
  int sentence_line = 0;

  auto flush_sentence = [&]() {
    if (words.empty()) return;
    if (!have_doc) {
      throw ParseError(Where(source, sentence_line) +
                       ": tokens before the first '# id' header");
    }
    if (!IsWellFormed(tags)) {
      throw ValidationError(Where(source, sentence_line) + ": document '" +
                            doc.id + "': ill-formed BILOU sequence");
    }
    const int index = static_cast<int>(doc.sentences.size());
    doc.sentences.push_back(MakeSentence(words));
    for (const SpanAnnotation& s : DecodeBilou(tags, index)) {
      doc.annotations.push_back(s);
    }
    words.clear();
    tags.clear();
  };
  auto flush_doc = [&]() {
    flush_sentence();
    if (!have_doc) return;
    ValidateDocument(doc);
    corpus.push_back(std::move(doc));
    doc = Document{};
    have_doc = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    line = StripCr(line);
    const std::string where = Where(source, line_no);
    if (line.empty()) {
      flush_sentence();
      continue;
    }
    if (line[0] == '#') {
      if (line.rfind("# id", 0) != 0) continue;
      flush_doc();
      ParseConllHeader(line, where, doc);
      have_doc = true;
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(where + ": expected 'TOKEN<TAB>TAG'");
    }
    const std::string tag_name = line.substr(tab + 1);
    const auto tag = ParseTag(tag_name);
    if (!tag) {
      throw ValidationError(where + ": unknown tag '" + tag_name + "'");
    }
    if (words.empty()) sentence_line = line_no;
    words.push_back(line.substr(0, tab));
    tags.push_back(*tag);
  }
  flush_doc();
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read corpus file '" + path.string() + "'");
  return format == CorpusFormat::kJsonl ? ReadJsonlCorpus(in, path.string())
                                        : ReadConllCorpus(in, path.string());
}

void WriteJsonlCorpus(std::ostream& out, const Corpus& corpus) {
  for (const Document& doc : corpus) {
    json j;
    j["id"] = doc.id;
    j["domain"] = DomainCode(doc.domain);
    json sentences = json::array();
    for (const Sentence& s : doc.sentences) {
      json tokens = json::array();
      for (const Token& t : s.tokens) {
        tokens.push_back({{"text", t.text}, {"start", t.start}, {"end", t.end}});
      }
      sentences.push_back({{"tokens", std::move(tokens)}});
    }
    j["sentences"] = std::move(sentences);
    json annotations = json::array();
    for (const SpanAnnotation& a : doc.annotations) {
      annotations.push_back({{"sentence", a.sentence},
                             {"start", a.start},
                             {"end", a.end},
                             {"concept", ConceptName(a.kind)}});
    }
    j["annotations"] = std::move(annotations);
    out << j.dump() << '\n';
  }
}

void WriteConllCorpus(std::ostream& out, const Corpus& corpus) {
  for (const Document& doc : corpus) {
    out << "# id = " << doc.id << "\tdomain = " << DomainCode(doc.domain)
        << '\n';
    const auto all_tags = DocumentTags(doc);
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      const Sentence& sent = doc.sentences[s];
      for (int t = 0; t < sent.size(); ++t) {
        out << sent.tokens[t].text << '\t' << TagName(all_tags[s][t]) << '\n';
      }
      out << '\n';
    }
  }
}

void SaveCorpus(const std::filesystem::path& path, const Corpus& corpus,
                CorpusFormat format) {
  std::ostringstream out;
  if (format == CorpusFormat::kJsonl) {
    WriteJsonlCorpus(out, corpus);
  } else {
    WriteConllCorpus(out, corpus);
  }
  WriteFileAtomic(path, out.str());
}

void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'",
                          ExitCode::kValidation);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write failed for '" + tmp.string() + "'",
                          ExitCode::kValidation);
  }
  std::filesystem::rename(tmp, path);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sciconcept
