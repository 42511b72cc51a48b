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

#include "kgx/sparql.h"

#include "httplib.h"
#include "kgx/text.h"

namespace kgx {

namespace {

// Decodes one RDF term in SPARQL TSV syntax.
std::string DecodeTerm(std::string_view term, const std::string &where) {
  term = Trim(term);
  if (term.empty()) return "";
  if (term.front() == '<') {
    if (term.back() != '>') throw Error(where + ": unterminated IRI");
    return std::string(term.substr(1, term.size() - 2));
  }
  if (term.front() != '"') return std::string(term);
  std::string out;
  size_t i = 1;
  for (; i < term.size(); ++i) {
    char c = term[i];
    if (c == '"') break;
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (++i == term.size()) break;
    switch (term[i]) {
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: out.push_back(term[i]);
    }
  }
  if (i >= term.size()) throw Error(where + ": unterminated literal");
  std::string_view suffix = term.substr(i + 1);
  if (!suffix.empty() && suffix[0] != '@' && suffix.substr(0, 2) != "^^") {
    throw Error(where + ": malformed literal suffix");
  }
  return out;
}

std::string LocalName(const std::string &iri) {
  size_t pos = iri.find_last_of("/#");
  return pos == std::string::npos ? iri : iri.substr(pos + 1);
}

}  // namespace

EntityVocabulary ParseSparqlTsv(std::string_view body,
                                std::string_view entity_type) {
  std::vector<std::string> lines = SplitLines(body);
  if (lines.empty()) throw Error("sparql: empty response body");
  std::vector<std::string> header = Split(lines[0], '\t');
  int item = -1;
  int label = -1;
  int alt = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    std::string_view h = Trim(header[i]);
    if (!h.empty() && (h[0] == '?' || h[0] == '$')) h.remove_prefix(1);
    if (h == "item") item = static_cast<int>(i);
    if (h == "label") label = static_cast<int>(i);
    if (h == "altLabels") alt = static_cast<int>(i);
  }
  if (item < 0 || label < 0 || alt < 0) {
    throw Error("sparql: response lacks item/label/altLabels columns");
  }
  EntityVocabulary vocab;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::string where = "sparql response line " + std::to_string(i + 1);
    std::vector<std::string> f = Split(lines[i], '\t');
    if (f.size() != header.size()) {
      throw Error(where + ": expected " + std::to_string(header.size()) +
                  " columns, found " + std::to_string(f.size()));
    }
    EntityEntry entry;
    entry.entity_id = LocalName(DecodeTerm(f[item], where));
    entry.entity_type = std::string(entity_type);
    if (entry.entity_id.empty()) throw Error(where + ": empty item");
    std::string preferred(Trim(DecodeTerm(f[label], where)));
    std::vector<std::string> synonyms;
    if (!preferred.empty()) synonyms.push_back(preferred);
    for (const std::string &s : Split(DecodeTerm(f[alt], where), ';')) {
      std::string_view t = Trim(s);
      if (!t.empty()) synonyms.emplace_back(t);
    }
    if (synonyms.empty()) continue;
    entry.preferred_label = synonyms.front();
    entry.synonyms.insert(synonyms.begin(), synonyms.end());
    vocab.Merge(entry);
  }
  return vocab;
}

EntityVocabulary FetchSparqlVocab(const std::string &endpoint_url,
                                  const std::string &query,
                                  const std::string &entity_type,
                                  const std::filesystem::path &cache_path) {
  if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
    return LoadEntityVocab(cache_path);
  }
  size_t scheme = endpoint_url.find("://");
  if (scheme == std::string::npos) {
    throw Error("sparql: endpoint url lacks a scheme: " + endpoint_url);
  }
  size_t path_start = endpoint_url.find('/', scheme + 3);
  std::string host = endpoint_url.substr(0, path_start);
  std::string path =
      path_start == std::string::npos ? "/" : endpoint_url.substr(path_start);

  httplib::Client client(host);
  client.set_connection_timeout(10);
  client.set_read_timeout(120);
  httplib::Params params{{"query", query}};
  httplib::Headers headers{{"Accept", "text/tab-separated-values"},
                           {"User-Agent", "kgx-vocabulary-fetcher/1.0"}};
  httplib::Result res = client.Get(path, params, headers);
  if (!res) {
    throw Error("sparql: request to " + endpoint_url +
                " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error("sparql: endpoint " + endpoint_url + " returned status " +
                std::to_string(res->status));
  }
  EntityVocabulary vocab = ParseSparqlTsv(res->body, entity_type);
  if (!cache_path.empty()) WriteEntityVocab(vocab, cache_path);
  return vocab;
}

}  // namespace kgx
