// Copyright 2026 The kgx Authors.
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

#include "kgx/corpus.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "json.hpp"
#include "kgx/text.h"

namespace kgx {

namespace {

std::string Where(std::string_view source, size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

int64_t RequireInt(const std::string &field, const std::string &where,
                   std::string_view what) {
  int64_t v = 0;
  if (!ParseInt64(field, &v)) {
    throw Error(where + ": invalid " + std::string(what) + " '" + field + "'");
  }
  return v;
}

void RequireNoLineBreak(std::string_view value, std::string_view what) {
  if (value.find_first_of("\n\r") != std::string_view::npos) {
    throw Error(std::string(what) + " contains a line break: " +
                std::string(value.substr(0, 40)));
  }
}

void RequireValidId(std::string_view id) {
  if (id.empty()) throw Error("empty document id");
  if (id.find_first_of("\t\n\r") != std::string_view::npos) {
    throw Error("document id contains tab or newline: " + std::string(id));
  }
}

}  // namespace

TextSpan SentenceParse::Extent() const {
  if (tokens.empty()) return TextSpan{};
  return TextSpan{tokens.front().span.start, tokens.back().span.end};
}

std::string_view OriginName(MentionOrigin origin) {
  return origin == MentionOrigin::kDictionary ? "dictionary" : "external";
}

std::string_view TriggerName(TriggerKind trigger) {
  switch (trigger) {
    case TriggerKind::kVerb: return "verb";
    case TriggerKind::kKeyword: return "keyword";
    case TriggerKind::kPhrase: return "phrase";
  }
  return "phrase";
}

std::string_view ExtractorName(Extractor extractor) {
  return extractor == Extractor::kPathIE ? "pathie" : "openie";
}

bool ParseOrigin(std::string_view s, MentionOrigin *out) {
  if (s == "dictionary") {
    *out = MentionOrigin::kDictionary;
  } else if (s == "external") {
    *out = MentionOrigin::kExternal;
  } else {
    return false;
  }
  return true;
}

bool ParseTrigger(std::string_view s, TriggerKind *out) {
  if (s == "verb") {
    *out = TriggerKind::kVerb;
  } else if (s == "keyword") {
    *out = TriggerKind::kKeyword;
  } else if (s == "phrase") {
    *out = TriggerKind::kPhrase;
  } else {
    return false;
  }
  return true;
}

bool ParseExtractor(std::string_view s, Extractor *out) {
  if (s == "pathie") {
    *out = Extractor::kPathIE;
  } else if (s == "openie") {
    *out = Extractor::kOpenIE;
  } else {
    return false;
  }
  return true;
}

// --- DocumentIndex -----------------------------------------------------------

DocumentIndex::DocumentIndex(std::vector<Document> documents) {
  for (Document &d : documents) Add(std::move(d));
}

void DocumentIndex::Add(Document document) {
  if (index_.count(document.id) > 0) {
    throw Error("duplicate document id " + document.id);
  }
  index_.emplace(document.id, documents_.size());
  contents_.push_back(document.Content());
  documents_.push_back(std::move(document));
}

const Document *DocumentIndex::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &documents_[it->second];
}

const std::string *DocumentIndex::Content(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &contents_[it->second];
}

// --- Documents ---------------------------------------------------------------

bool ParseDocumentFormat(std::string_view s, DocumentFormat *out) {
  if (s == "jsonl") {
    *out = DocumentFormat::kJsonl;
  } else if (s == "pubtator") {
    *out = DocumentFormat::kPubTator;
  } else {
    return false;
  }
  return true;
}

namespace {

// Recognizes "id|t|text" and "id|a|text" lines.
bool SplitPubTatorText(std::string_view line, std::string_view *id,
                       char *kind, std::string_view *text) {
  size_t bar = line.find('|');
  if (bar == std::string_view::npos || bar == 0) return false;
  if (line.substr(0, bar).find('\t') != std::string_view::npos) return false;
  if (line.size() < bar + 3) return false;
  char k = line[bar + 1];
  if ((k != 't' && k != 'a') || line[bar + 2] != '|') return false;
  *id = line.substr(0, bar);
  *kind = k;
  *text = line.substr(bar + 3);
  return true;
}

std::vector<Document> ParsePubTatorDocuments(std::string_view content,
                                             std::string_view source,
                                             std::string_view collection) {
  std::vector<Document> docs;
  std::set<std::string> seen;
  std::vector<std::string> lines = SplitLines(content);
  Document *current = nullptr;
  bool has_abstract = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string &line = lines[i];
    std::string where = Where(source, i + 1);
    if (Trim(line).empty()) {
      current = nullptr;
      continue;
    }
    std::string_view id;
    std::string_view text;
    char kind = 0;
    if (SplitPubTatorText(line, &id, &kind, &text)) {
      if (kind == 't') {
        if (!seen.insert(std::string(id)).second) {
          throw Error(where + ": duplicate document id " + std::string(id));
        }
        docs.push_back(Document{std::string(id), std::string(text), "",
                                std::string(collection)});
        current = &docs.back();
        has_abstract = false;
      } else {
        if (current == nullptr || current->id != id || has_abstract) {
          throw Error(where + ": abstract line without matching title line");
        }
        current->body = std::string(text);
        has_abstract = true;
      }
      continue;
    }
    if (line.find('\t') != std::string::npos) continue;  // annotation line
    throw Error(where + ": malformed PubTator line");
  }
  return docs;
}

std::vector<Document> ParseJsonlDocuments(std::string_view content,
                                          std::string_view source,
                                          std::string_view collection) {
  std::vector<Document> docs;
  std::set<std::string> seen;
  std::vector<std::string> lines = SplitLines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    std::string where = Where(source, i + 1);
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::exception &e) {
      throw Error(where + ": malformed json: " + e.what());
    }
    if (!record.is_object()) throw Error(where + ": record is not an object");
    auto text_field = [&](const char *key, bool required) -> std::string {
      auto it = record.find(key);
      if (it == record.end()) {
        if (required) throw Error(where + ": missing field '" + key + "'");
        return "";
      }
      if (!it->is_string()) {
        throw Error(where + ": field '" + key + "' is not a string");
      }
      return it->get<std::string>();
    };
    Document doc;
    doc.id = text_field("id", true);
    doc.title = text_field("title", true);
    doc.body = text_field("abstract", true);
    doc.collection = text_field("collection", false);
    if (doc.collection.empty()) doc.collection = std::string(collection);
    try {
      RequireValidId(doc.id);
    } catch (const Error &e) {
      throw Error(where + ": " + e.what());
    }
    if (!seen.insert(doc.id).second) {
      throw Error(where + ": duplicate document id " + doc.id);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace

std::vector<Document> ParseDocuments(std::string_view content,
                                     DocumentFormat format,
                                     std::string_view source,
                                     std::string_view collection) {
  if (format == DocumentFormat::kPubTator) {
    return ParsePubTatorDocuments(content, source, collection);
  }
  return ParseJsonlDocuments(content, source, collection);
}

std::vector<Document> LoadDocuments(const std::filesystem::path &path,
                                    DocumentFormat format,
                                    std::string_view collection) {
  return ParseDocuments(ReadFile(path), format, path.string(), collection);
}

std::string FormatDocuments(std::vector<Document> documents,
                            DocumentFormat format,
                            const std::vector<EntityMention> &mentions) {
  std::sort(documents.begin(), documents.end(),
            [](const Document &a, const Document &b) { return a.id < b.id; });
  std::string out;
  if (format == DocumentFormat::kJsonl) {
    for (const Document &d : documents) {
      RequireValidId(d.id);
      nlohmann::ordered_json record;
      record["id"] = d.id;
      record["title"] = d.title;
      record["abstract"] = d.body;
      if (!d.collection.empty()) record["collection"] = d.collection;
      try {
        out += record.dump();
      } catch (const nlohmann::json::exception &e) {
        throw Error("cannot serialize document " + d.id + ": " + e.what());
      }
      out += '\n';
    }
    return out;
  }

  std::map<std::string, std::vector<const EntityMention *>> by_doc;
  for (const EntityMention &m : mentions) by_doc[m.doc_id].push_back(&m);
  for (auto &[id, list] : by_doc) {
    std::sort(list.begin(), list.end(),
              [](const EntityMention *a, const EntityMention *b) {
                return *a < *b;
              });
  }
  bool first = true;
  for (const Document &d : documents) {
    RequireValidId(d.id);
    if (d.id.find('|') != std::string::npos) {
      throw Error("PubTator document id contains '|': " + d.id);
    }
    RequireNoLineBreak(d.title, "title");
    RequireNoLineBreak(d.body, "abstract");
    if (!first) out += '\n';
    first = false;
    out += d.id + "|t|" + d.title + "\n";
    out += d.id + "|a|" + d.body + "\n";
    auto it = by_doc.find(d.id);
    if (it == by_doc.end()) continue;
    for (const EntityMention *m : it->second) {
      for (std::string_view f : {std::string_view(m->surface),
                                 std::string_view(m->entity_type),
                                 std::string_view(m->entity_id)}) {
        if (f.find_first_of("\t\n\r") != std::string_view::npos) {
          throw Error("PubTator annotation field contains tab or newline");
        }
      }
      out += m->doc_id + "\t" + std::to_string(m->span.start) + "\t" +
             std::to_string(m->span.end) + "\t" + m->surface + "\t" +
             m->entity_type + "\t" + m->entity_id + "\n";
    }
  }
  return out;
}

void WriteDocuments(const std::vector<Document> &documents,
                    const std::filesystem::path &path, DocumentFormat format) {
  WriteFile(path, FormatDocuments(documents, format));
}

// --- Parses ------------------------------------------------------------------

std::string ValidateTree(const SentenceParse &parse) {
  const int n = parse.size();
  if (n == 0) return "sentence has no tokens";
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token &t = parse.tokens[i];
    if (t.index != i + 1) {
      return "token ids are not consecutive at position " +
             std::to_string(i + 1);
    }
    if (t.head < 0 || t.head > n) {
      return "token " + std::to_string(t.index) + " has head " +
             std::to_string(t.head) + " outside the sentence";
    }
    if (t.head == t.index) {
      return "token " + std::to_string(t.index) + " is its own head";
    }
    if (t.head == 0) ++roots;
    if (t.span.start < 0 || t.span.start >= t.span.end) {
      return "token " + std::to_string(t.index) + " has an empty span";
    }
    if (i > 0 && parse.tokens[i - 1].span.end > t.span.start) {
      return "token " + std::to_string(t.index) +
             " overlaps or precedes the previous token";
    }
  }
  if (roots != 1) {
    return "expected exactly one root, found " + std::to_string(roots);
  }
  // With a single root and in-range heads, the graph is a tree iff every
  // token reaches the root.
  std::vector<int> state(n + 1, 0);  // 0 unknown, 1 on stack, 2 reaches root
  state[0] = 2;
  for (int i = 1; i <= n; ++i) {
    std::vector<int> chain;
    int cur = i;
    while (state[cur] == 0) {
      state[cur] = 1;
      chain.push_back(cur);
      cur = parse.token(cur).head;
    }
    if (state[cur] == 1) {
      return "cycle through token " + std::to_string(cur);
    }
    for (int c : chain) state[c] = 2;
  }
  return "";
}

namespace {

struct PendingSentence {
  std::string doc_id;
  bool has_doc_id = false;
  int64_t sent_index = 0;
  bool has_sent_index = false;
  std::string text;
  std::vector<Token> tokens;
  std::string problem;
  size_t first_line = 0;
};

std::string Describe(const PendingSentence &s) {
  return "doc_id=" + (s.has_doc_id ? s.doc_id : std::string("?")) +
         " sent_index=" +
         (s.has_sent_index ? std::to_string(s.sent_index) : std::string("?"));
}

bool CommentValue(std::string_view line, std::string_view key,
                  std::string *value) {
  std::string_view body = Trim(line.substr(1));
  if (body.substr(0, key.size()) != key) return false;
  std::string_view rest = body.substr(key.size());
  size_t i = 0;
  while (i < rest.size() && rest[i] == ' ') ++i;
  if (i >= rest.size() || rest[i] != '=') return false;
  rest = rest.substr(i + 1);
  if (!rest.empty() && rest[0] == ' ') rest.remove_prefix(1);
  *value = std::string(rest);
  return true;
}

void ParseTokenLine(const std::string &line, PendingSentence *s) {
  std::vector<std::string> f = Split(line, '\t');
  if (f.size() != 10) {
    s->problem = "expected 10 columns, found " + std::to_string(f.size());
    return;
  }
  // Multiword ranges and empty nodes carry no syntactic head.
  if (f[0].find_first_of("-.") != std::string::npos) return;
  Token t;
  int64_t v = 0;
  if (!ParseInt64(f[0], &v)) {
    s->problem = "invalid token id '" + f[0] + "'";
    return;
  }
  t.index = static_cast<int>(v);
  t.surface = f[1];
  t.lemma = f[2];
  t.upos = f[3];
  if (!ParseInt64(f[6], &v)) {
    s->problem = "invalid head '" + f[6] + "' for token " + f[0];
    return;
  }
  t.head = static_cast<int>(v);
  t.deprel = f[7];
  bool has_start = false;
  bool has_end = false;
  for (const std::string &item : Split(f[9], '|')) {
    if (item.rfind("SpanStart=", 0) == 0) {
      has_start = ParseInt64(std::string_view(item).substr(10), &t.span.start);
    } else if (item.rfind("SpanEnd=", 0) == 0) {
      has_end = ParseInt64(std::string_view(item).substr(8), &t.span.end);
    }
  }
  if (!has_start || !has_end) {
    s->problem = "missing character offsets for token " + f[0];
    return;
  }
  s->tokens.push_back(std::move(t));
}

}  // namespace

ParseLoadResult ParseConllu(std::string_view content, std::string_view source,
                            OnInvalid on_invalid) {
  ParseLoadResult result;
  std::set<std::pair<std::string, int64_t>> seen;
  PendingSentence cur;
  bool open = false;

  auto finish = [&]() {
    if (!open) return;
    open = false;
    std::string problem = cur.problem;
    if (problem.empty() && !cur.has_doc_id) problem = "missing # doc_id";
    if (problem.empty() && !cur.has_sent_index) problem = "missing # sent_index";
    SentenceParse parse;
    if (problem.empty()) {
      parse.doc_id = cur.doc_id;
      parse.sentence_index = static_cast<int>(cur.sent_index);
      parse.tokens = std::move(cur.tokens);
      parse.text = cur.text;
      problem = ValidateTree(parse);
    }
    if (problem.empty() &&
        !seen.insert({cur.doc_id, cur.sent_index}).second) {
      problem = "duplicate sentence";
    }
    if (!problem.empty()) {
      std::string msg = Where(source, cur.first_line) + ": " + Describe(cur) +
                        ": " + problem;
      if (on_invalid == OnInvalid::kAbort) throw Error(msg);
      result.errors.push_back(std::move(msg));
    } else {
      result.parses.push_back(std::move(parse));
    }
    cur = PendingSentence{};
  };

  std::vector<std::string> lines = SplitLines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string &line = lines[i];
    if (Trim(line).empty()) {
      finish();
      continue;
    }
    if (!open) {
      open = true;
      cur.first_line = i + 1;
    }
    if (line[0] == '#') {
      std::string value;
      if (CommentValue(line, "doc_id", &value)) {
        cur.doc_id = value;
        cur.has_doc_id = !value.empty();
      } else if (CommentValue(line, "sent_index", &value)) {
        cur.has_sent_index = ParseInt64(value, &cur.sent_index);
        if (!cur.has_sent_index) cur.problem = "invalid sent_index";
      } else if (CommentValue(line, "text", &value)) {
        cur.text = value;
      }
      continue;
    }
    if (cur.problem.empty()) ParseTokenLine(line, &cur);
  }
  finish();
  return result;
}

ParseLoadResult LoadParses(const std::filesystem::path &path,
                           OnInvalid on_invalid) {
  return ParseConllu(ReadFile(path), path.string(), on_invalid);
}

void AlignParses(const DocumentIndex &docs, ParseLoadResult *result,
                 OnInvalid on_invalid) {
  std::vector<SentenceParse> kept;
  kept.reserve(result->parses.size());
  for (SentenceParse &p : result->parses) {
    std::string problem;
    const std::string *content = docs.Content(p.doc_id);
    if (content == nullptr) {
      problem = "unknown document";
    } else {
      for (const Token &t : p.tokens) {
        if (t.span.end > static_cast<int64_t>(content->size())) {
          problem = "token " + std::to_string(t.index) +
                    " lies past the end of the document";
          break;
        }
        if (content->compare(t.span.start, t.span.length(), t.surface) != 0) {
          problem = "token " + std::to_string(t.index) + " surface '" +
                    t.surface + "' does not match the document text";
          break;
        }
      }
      if (problem.empty()) {
        TextSpan extent = p.Extent();
        std::string text = content->substr(extent.start, extent.length());
        if (p.text.empty()) {
          p.text = std::move(text);
        } else if (p.text != text) {
          problem = "sentence text does not match the document text";
        }
      }
    }
    if (problem.empty()) {
      kept.push_back(std::move(p));
      continue;
    }
    std::string msg = "doc_id=" + p.doc_id +
                      " sent_index=" + std::to_string(p.sentence_index) +
                      ": " + problem;
    if (on_invalid == OnInvalid::kAbort) throw Error(msg);
    result->errors.push_back(std::move(msg));
  }
  result->parses = std::move(kept);
}

std::string FormatConllu(std::vector<SentenceParse> parses) {
  std::sort(parses.begin(), parses.end(),
            [](const SentenceParse &a, const SentenceParse &b) {
              return std::tie(a.doc_id, a.sentence_index) <
                     std::tie(b.doc_id, b.sentence_index);
            });
  std::string out;
  for (const SentenceParse &p : parses) {
    RequireValidId(p.doc_id);
    RequireNoLineBreak(p.text, "sentence text");
    out += "# doc_id = " + p.doc_id + "\n";
    out += "# sent_index = " + std::to_string(p.sentence_index) + "\n";
    if (!p.text.empty()) out += "# text = " + p.text + "\n";
    for (const Token &t : p.tokens) {
      for (const std::string *f : {&t.surface, &t.lemma, &t.upos, &t.deprel}) {
        if (f->find_first_of("\t\n\r") != std::string::npos) {
          throw Error("CoNLL-U field contains tab or newline");
        }
      }
      out += std::to_string(t.index) + "\t" + t.surface + "\t" + t.lemma +
             "\t" + t.upos + "\t_\t_\t" + std::to_string(t.head) + "\t" +
             t.deprel + "\t_\tSpanStart=" + std::to_string(t.span.start) +
             "|SpanEnd=" + std::to_string(t.span.end) + "\n";
    }
    out += "\n";
  }
  return out;
}

void WriteParses(const std::vector<SentenceParse> &parses,
                 const std::filesystem::path &path) {
  WriteFile(path, FormatConllu(parses));
}

// --- Mentions ----------------------------------------------------------------

bool ParseMentionFormat(std::string_view s, MentionFormat *out) {
  if (s == "pubtator") {
    *out = MentionFormat::kPubTator;
  } else if (s == "tsv") {
    *out = MentionFormat::kTsv;
  } else {
    return false;
  }
  return true;
}

namespace {

constexpr std::string_view kMentionHeader =
    "doc_id\tstart\tend\tsurface\tentity_type\tentity_id\torigin";

using ContentLookup = std::function<const std::string *(std::string_view)>;

EntityMention ParseMentionRow(const std::vector<std::string> &f,
                              const std::string &where,
                              const ContentLookup &lookup) {
  if (f.size() != 6 && f.size() != 7) {
    throw Error(where + ": expected 6 or 7 columns, found " +
                std::to_string(f.size()));
  }
  EntityMention m;
  m.doc_id = f[0];
  m.span.start = RequireInt(f[1], where, "start offset");
  m.span.end = RequireInt(f[2], where, "end offset");
  m.surface = UnescapeField(f[3]);
  m.entity_type = UnescapeField(f[4]);
  m.entity_id = UnescapeField(f[5]);
  m.origin = MentionOrigin::kExternal;
  if (f.size() == 7 && !ParseOrigin(f[6], &m.origin)) {
    throw Error(where + ": invalid origin '" + f[6] + "'");
  }
  if (m.span.start < 0 || m.span.start >= m.span.end) {
    throw Error(where + ": invalid span " + f[1] + ".." + f[2]);
  }
  if (lookup) {
    const std::string *content = lookup(m.doc_id);
    if (content == nullptr) {
      throw Error(where + ": unknown document " + m.doc_id);
    }
    if (m.span.end > static_cast<int64_t>(content->size())) {
      throw Error(where + ": span " + f[1] + ".." + f[2] +
                  " out of bounds for document " + m.doc_id);
    }
    if (content->compare(m.span.start, m.span.length(), m.surface) != 0) {
      throw Error(where + ": mention '" + m.surface +
                  "' does not match document text '" +
                  content->substr(m.span.start, m.span.length()) + "'");
    }
  }
  return m;
}

std::vector<EntityMention> ParseMentionLines(std::string_view content,
                                             std::string_view source,
                                             const ContentLookup &lookup,
                                             bool pubtator) {
  std::vector<EntityMention> mentions;
  std::vector<std::string> lines = SplitLines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string &line = lines[i];
    if (Trim(line).empty()) continue;
    if (i == 0 && !pubtator && line.rfind("doc_id\t", 0) == 0) continue;
    if (pubtator) {
      std::string_view id;
      std::string_view text;
      char kind = 0;
      if (SplitPubTatorText(line, &id, &kind, &text)) continue;
    }
    std::vector<std::string> f = Split(line, '\t');
    // PubTator relation lines: id, relation, entity, entity.
    if (pubtator && f.size() == 4) continue;
    mentions.push_back(ParseMentionRow(f, Where(source, i + 1), lookup));
  }
  return mentions;
}

}  // namespace

std::vector<EntityMention> ParseMentionsTsv(std::string_view content,
                                            std::string_view source,
                                            const DocumentIndex *docs) {
  ContentLookup lookup;
  if (docs != nullptr) {
    lookup = [docs](std::string_view id) { return docs->Content(id); };
  }
  return ParseMentionLines(content, source, lookup, false);
}

std::vector<EntityMention> LoadExternalMentions(
    const std::filesystem::path &path, MentionFormat format,
    const DocumentIndex &docs) {
  std::string content = ReadFile(path);
  std::vector<EntityMention> mentions;
  if (format == MentionFormat::kPubTator) {
    DocumentIndex local(
        ParseDocuments(content, DocumentFormat::kPubTator, path.string()));
    ContentLookup lookup = [&](std::string_view id) -> const std::string * {
      const std::string *c = local.Content(id);
      return c != nullptr ? c : docs.Content(id);
    };
    mentions = ParseMentionLines(content, path.string(), lookup, true);
  } else {
    mentions = ParseMentionsTsv(content, path.string(), &docs);
  }
  for (EntityMention &m : mentions) m.origin = MentionOrigin::kExternal;
  return mentions;
}

std::vector<EntityMention> LoadMentions(const std::filesystem::path &path,
                                        const DocumentIndex *docs) {
  return ParseMentionsTsv(ReadFile(path), path.string(), docs);
}

std::string FormatMentions(std::vector<EntityMention> mentions) {
  std::sort(mentions.begin(), mentions.end());
  std::string out(kMentionHeader);
  out += '\n';
  for (const EntityMention &m : mentions) {
    RequireValidId(m.doc_id);
    out += m.doc_id;
    out += '\t';
    out += std::to_string(m.span.start);
    out += '\t';
    out += std::to_string(m.span.end);
    out += '\t';
    out += EscapeField(m.surface);
    out += '\t';
    out += EscapeField(m.entity_type);
    out += '\t';
    out += EscapeField(m.entity_id);
    out += '\t';
    out += OriginName(m.origin);
    out += '\n';
  }
  return out;
}

void WriteMentions(const std::vector<EntityMention> &mentions,
                   const std::filesystem::path &path) {
  WriteFile(path, FormatMentions(mentions));
}

// --- Statements --------------------------------------------------------------

const std::vector<std::string> &StatementColumns() {
  static const std::vector<std::string> kColumns = {
      "doc_id",          "sentence_index", "subject",      "subject_id",
      "subject_type",    "subject_start",  "subject_end",  "predicate",
      "predicate_lemma", "object",         "object_id",    "object_type",
      "object_start",    "object_end",     "trigger",      "trigger_token",
      "extractor",       "source",         "sentence"};
  return kColumns;
}

namespace {

void AppendArgument(const Argument &a, std::string *out) {
  *out += EscapeField(a.text);
  *out += '\t';
  *out += EscapeField(a.entity_id);
  *out += '\t';
  *out += EscapeField(a.entity_type);
  *out += '\t';
  if (a.span) *out += std::to_string(a.span->start);
  *out += '\t';
  if (a.span) *out += std::to_string(a.span->end);
}

Argument ParseArgument(const std::vector<std::string> &f, size_t at,
                       const std::string &where) {
  Argument a;
  a.text = UnescapeField(f[at]);
  a.entity_id = UnescapeField(f[at + 1]);
  a.entity_type = UnescapeField(f[at + 2]);
  const std::string &s = f[at + 3];
  const std::string &e = f[at + 4];
  if (s.empty() != e.empty()) throw Error(where + ": half-specified span");
  if (!s.empty()) {
    a.span = TextSpan{RequireInt(s, where, "span start"),
                      RequireInt(e, where, "span end")};
  }
  return a;
}

}  // namespace

void AppendStatementFields(const RawStatement &s, std::string *out) {
  RequireValidId(s.doc_id);
  *out += s.doc_id;
  *out += '\t';
  *out += std::to_string(s.sentence_index);
  *out += '\t';
  AppendArgument(s.subject, out);
  *out += '\t';
  *out += EscapeField(s.predicate_surface);
  *out += '\t';
  *out += EscapeField(s.predicate_lemma);
  *out += '\t';
  AppendArgument(s.object, out);
  *out += '\t';
  *out += TriggerName(s.trigger);
  *out += '\t';
  *out += std::to_string(s.trigger_token);
  *out += '\t';
  *out += ExtractorName(s.extractor);
  *out += '\t';
  *out += std::to_string(s.source);
  *out += '\t';
  *out += EscapeField(s.sentence);
}

RawStatement ParseStatementFields(const std::vector<std::string> &f,
                                  size_t offset, const std::string &where) {
  if (f.size() < offset + StatementColumns().size()) {
    throw Error(where + ": too few columns");
  }
  RawStatement s;
  size_t i = offset;
  s.doc_id = f[i++];
  s.sentence_index =
      static_cast<int>(RequireInt(f[i++], where, "sentence index"));
  s.subject = ParseArgument(f, i, where);
  i += 5;
  s.predicate_surface = UnescapeField(f[i++]);
  s.predicate_lemma = UnescapeField(f[i++]);
  s.object = ParseArgument(f, i, where);
  i += 5;
  if (!ParseTrigger(f[i++], &s.trigger)) throw Error(where + ": bad trigger");
  s.trigger_token =
      static_cast<int>(RequireInt(f[i++], where, "trigger token"));
  if (!ParseExtractor(f[i++], &s.extractor)) {
    throw Error(where + ": bad extractor");
  }
  s.source = RequireInt(f[i++], where, "source");
  s.sentence = UnescapeField(f[i++]);
  return s;
}

std::vector<RawStatement> ParseStatements(std::string_view content,
                                          std::string_view source) {
  std::vector<RawStatement> out;
  std::vector<std::string> lines = SplitLines(content);
  const size_t columns = StatementColumns().size();
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i == 0 && lines[i].rfind("doc_id\t", 0) == 0) continue;
    if (lines[i].empty()) continue;
    std::vector<std::string> f = Split(lines[i], '\t');
    std::string where = Where(source, i + 1);
    if (f.size() != columns) {
      throw Error(where + ": expected " + std::to_string(columns) +
                  " columns, found " + std::to_string(f.size()));
    }
    out.push_back(ParseStatementFields(f, 0, where));
  }
  return out;
}

std::vector<RawStatement> LoadStatements(const std::filesystem::path &path) {
  return ParseStatements(ReadFile(path), path.string());
}

std::string FormatStatements(std::vector<RawStatement> statements) {
  std::sort(statements.begin(), statements.end());
  std::string out = Join(StatementColumns(), "\t");
  out += '\n';
  for (const RawStatement &s : statements) {
    AppendStatementFields(s, &out);
    out += '\n';
  }
  return out;
}

void WriteStatements(const std::vector<RawStatement> &statements,
                     const std::filesystem::path &path) {
  WriteFile(path, FormatStatements(statements));
}

}  // namespace kgx
