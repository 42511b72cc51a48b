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

#include "test_support.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "kgx/text.h"

namespace kgx::testing {

namespace {

int Uniform(Rng &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool Chance(Rng &rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

template <typename T>
const T &Pick(Rng &rng, const std::vector<T> &v) {
  return v[Uniform(rng, 0, static_cast<int>(v.size()) - 1)];
}

bool Space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool Word(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || u >= 0x80;
}

std::string Lower(std::string s) {
  for (char &c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::string Upper(std::string s) {
  for (char &c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

// Whitespace runs collapsed to one space and trimmed.
std::string Collapse(std::string_view s) {
  std::string out;
  bool gap = false;
  for (char c : s) {
    if (Space(c)) {
      gap = !out.empty();
      continue;
    }
    if (gap) out.push_back(' ');
    gap = false;
    out.push_back(c);
  }
  return out;
}

std::string Norm(std::string_view s) { return Lower(Collapse(s)); }

size_t CodePoints(std::string_view s) {
  size_t n = 0;
  for (char c : s) n += (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  return n;
}

std::vector<std::string> Tokens(const std::string &s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::string Capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 32);
  return s;
}

}  // namespace

std::filesystem::path DataDir() { return KGX_TEST_DATA_DIR; }

std::filesystem::path MiniCorpusDir() { return DataDir() / "minicorpus"; }

std::filesystem::path ScratchDir(const std::string &name) {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("kgx_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// --- Trees -------------------------------------------------------------------

SentenceParse RandomTree(Rng &rng, int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> head(n + 1, 0);
  for (int k = 1; k < n; ++k) head[order[k]] = order[Uniform(rng, 0, k - 1)];

  SentenceParse p;
  p.doc_id = "tree";
  int64_t pos = 0;
  for (int i = 1; i <= n; ++i) {
    Token t;
    t.index = i;
    t.surface = "t" + std::to_string(i);
    t.lemma = t.surface;
    t.upos = Chance(rng, 0.3) ? "VERB" : "NOUN";
    t.head = head[i];
    t.deprel = t.head == 0 ? "root" : "dep";
    t.span = {pos, pos + static_cast<int64_t>(t.surface.size())};
    if (i > 1) p.text += ' ';
    p.text += t.surface;
    pos = t.span.end + 1;
    p.tokens.push_back(t);
  }
  return p;
}

std::vector<int> BfsPath(const SentenceParse &parse, int a, int b) {
  const int n = parse.size();
  std::vector<std::vector<int>> adj(n + 1);
  for (const Token &t : parse.tokens) {
    if (t.head == 0) continue;
    adj[t.index].push_back(t.head);
    adj[t.head].push_back(t.index);
  }
  std::vector<int> prev(n + 1, -1);
  std::deque<int> queue = {a};
  prev[a] = a;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == b) break;
    for (int v : adj[u]) {
      if (prev[v] >= 0) continue;
      prev[v] = u;
      queue.push_back(v);
    }
  }
  std::vector<int> path;
  if (prev[b] < 0) return path;
  for (int v = b; v != a; v = prev[v]) path.push_back(v);
  path.push_back(a);
  std::reverse(path.begin(), path.end());
  return path;
}

// --- Linking -----------------------------------------------------------------

namespace {

struct OracleTarget {
  size_t entry;
  bool short_homonym;
  bool abbreviation;
};

struct OracleCandidate {
  TextSpan span;
  size_t entry;
  size_t length;  // code points of the normalized synonym
  bool short_homonym;
  bool abbreviation;
};

bool LooksLikeAbbreviation(const std::string &s) {
  size_t n = CodePoints(s);
  if (n < 2 || n > 10) return false;
  int upper = 0;
  for (char c : s) {
    if (Space(c)) return false;
    upper += c >= 'A' && c <= 'Z';
  }
  return upper >= 2;
}

// Single-token synonym that is a token of a strictly longer synonym.
bool ShortForm(const std::string &norm, const std::set<std::string> &all) {
  if (norm.find(' ') != std::string::npos) return false;
  for (const std::string &s : all) {
    std::string other = Norm(s);
    if (CodePoints(other) <= CodePoints(norm)) continue;
    for (const std::string &t : Tokens(other)) {
      if (t == norm) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<EntityMention> BruteForceLink(const std::string &doc_id,
                                          const std::string &content,
                                          const EntityVocabulary &vocab,
                                          const IgnoreList &ignore,
                                          const LinkerOptions &options) {
  const size_t min_len = static_cast<size_t>(options.min_length);
  const auto &entries = vocab.entries();
  std::map<std::string, std::vector<OracleTarget>> table;
  size_t longest_key = 0;
  for (size_t e = 0; e < entries.size(); ++e) {
    std::map<std::string, bool> forms;
    for (const std::string &s : entries[e].synonyms) {
      std::string n = options.case_sensitive ? Collapse(s) : Norm(s);
      if (n.empty()) continue;
      forms[n] = forms[n] || LooksLikeAbbreviation(s);
    }
    for (const auto &[n, abbreviation] : forms) {
      if (ignore.terms().count(Norm(n)) > 0) continue;
      if (CodePoints(n) < min_len) continue;
      table[n].push_back({e, ShortForm(Norm(n), entries[e].synonyms),
                          abbreviation});
      longest_key = std::max(longest_key, n.size());
    }
  }

  // Every substring that starts and ends on a word boundary and a
  // non-space byte.
  std::vector<OracleCandidate> candidates;
  const size_t size = content.size();
  for (size_t b = 0; b < size; ++b) {
    if (Space(content[b])) continue;
    if (b > 0 && Word(content[b - 1]) && Word(content[b])) continue;
    for (size_t e = b + 1; e <= size; ++e) {
      if (Space(content[e - 1])) continue;
      if (e < size && Word(content[e - 1]) && Word(content[e])) continue;
      std::string_view sub(content.data() + b, e - b);
      std::string key = options.case_sensitive ? Collapse(sub) : Norm(sub);
      if (key.size() > longest_key) break;
      auto it = table.find(key);
      if (it == table.end()) continue;
      if (CodePoints(sub) < min_len) continue;
      for (const OracleTarget &t : it->second) {
        candidates.push_back({TextSpan{static_cast<int64_t>(b),
                                       static_cast<int64_t>(e)},
                              t.entry, CodePoints(key), t.short_homonym,
                              t.abbreviation});
      }
    }
  }

  if (options.homonym_rule) {
    std::map<size_t, size_t> longest;
    for (const OracleCandidate &c : candidates) {
      longest[c.entry] = std::max(longest[c.entry], c.length);
    }
    std::vector<OracleCandidate> kept;
    for (const OracleCandidate &c : candidates) {
      if (c.short_homonym && longest[c.entry] <= c.length) continue;
      kept.push_back(c);
    }
    candidates = kept;
  }

  if (options.abbreviation_rule) {
    std::vector<AbbreviationPair> pairs = DetectAbbreviations(content);
    std::vector<OracleCandidate> kept;
    for (const OracleCandidate &c : candidates) {
      bool licensed = !c.abbreviation;
      std::string surface = content.substr(c.span.start, c.span.length());
      for (const AbbreviationPair &p : pairs) {
        if (licensed) break;
        bool same = options.case_sensitive
                        ? p.abbreviation == surface
                        : Norm(p.abbreviation) == Norm(surface);
        if (!same) continue;
        for (const OracleCandidate &o : candidates) {
          if (!o.abbreviation && o.entry == c.entry &&
              p.long_span.Contains(o.span)) {
            licensed = true;
            break;
          }
        }
      }
      if (licensed) kept.push_back(c);
    }
    candidates = kept;
  }

  // Per type: longest span first, then leftmost, then smallest entity id.
  std::map<std::string, std::map<TextSpan, std::set<std::string>>> groups;
  for (const OracleCandidate &c : candidates) {
    groups[entries[c.entry].entity_type][c.span].insert(
        entries[c.entry].entity_id);
  }
  std::vector<EntityMention> out;
  for (const auto &[type, spans] : groups) {
    std::vector<std::pair<TextSpan, const std::set<std::string> *>> order;
    for (const auto &[span, ids] : spans) order.push_back({span, &ids});
    std::sort(order.begin(), order.end(), [](const auto &a, const auto &b) {
      return std::make_tuple(-a.first.length(), a.first.start, *a.second->begin()) <
             std::make_tuple(-b.first.length(), b.first.start, *b.second->begin());
    });
    std::vector<TextSpan> taken;
    for (const auto &[span, ids] : order) {
      bool clash = false;
      for (const TextSpan &t : taken) clash = clash || t.Overlaps(span);
      if (clash) continue;
      taken.push_back(span);
      for (const std::string &id : *ids) {
        out.push_back(EntityMention{doc_id, span,
                                    content.substr(span.start, span.length()),
                                    id, type, MentionOrigin::kDictionary});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LinkCase RandomLinkCase(Rng &rng, int documents, int words) {
  static const std::vector<std::string> kPool = {
      "alpha",  "bravo",   "carbon", "delta",  "ember",   "falcon", "garnet",
      "harbor", "indigo",  "juniper", "kepler", "lumen",  "meadow", "nickel",
      "orchid", "pewter",  "quartz", "raven",  "saffron", "tundra", "umber",
      "velvet", "willow",  "xenon",  "yarrow", "zephyr",  "ash",    "oak",
      "elm",    "fir"};
  static const std::vector<std::string> kFiller = {
      "the", "of", "and", "in", "with", "was", "for", "a", "to", "by",
      "study", "patients", "effect", "levels", "trial", "group"};
  static const std::vector<std::string> kTypes = {"Drug", "Disease", "Gene",
                                                  "Person"};
  LinkCase c;
  std::vector<std::string> planted;  // raw synonyms to plant
  std::vector<std::pair<std::string, std::string>> definitions;  // long, abbr
  const int entities = Uniform(rng, 15, 30);
  std::set<std::pair<std::string, std::string>> keys;
  for (int e = 0; e < entities; ++e) {
    EntityEntry entry;
    entry.entity_id = "E" + std::to_string(Uniform(rng, 0, 40));
    entry.entity_type = Pick(rng, kTypes);
    if (!keys.insert({entry.entity_id, entry.entity_type}).second) continue;
    const int len = Uniform(rng, 1, 3);
    std::vector<std::string> parts;
    for (int k = 0; k < len; ++k) parts.push_back(Pick(rng, kPool));
    std::string long_form;
    for (const std::string &p : parts) {
      if (!long_form.empty()) long_form += ' ';
      long_form += Chance(rng, 0.5) ? Capitalize(p) : p;
    }
    entry.preferred_label = long_form;
    entry.synonyms.insert(long_form);
    if (len > 1 && Chance(rng, 0.6)) {
      // Short homonym: one token of the long form.
      entry.synonyms.insert(Capitalize(Pick(rng, parts)));
    }
    if (len > 1 && Chance(rng, 0.5)) {
      std::string abbr;
      for (const std::string &p : parts) abbr += Upper(p.substr(0, 1));
      abbr += Upper(parts.back().substr(1, 1));
      entry.synonyms.insert(abbr);
      definitions.push_back({long_form, abbr});
    }
    if (Chance(rng, 0.3)) entry.synonyms.insert(Pick(rng, kPool));
    for (const std::string &s : entry.synonyms) planted.push_back(s);
    c.vocab.Add(entry);
  }
  std::vector<std::string> ignore;
  for (int k = 0; k < 2; ++k) ignore.push_back(Pick(rng, kPool));
  c.ignore = IgnoreList(ignore);

  for (int d = 0; d < documents; ++d) {
    std::string body;
    int count = 0;
    auto append = [&](const std::string &piece) {
      if (!body.empty()) body += Chance(rng, 0.05) ? "  " : " ";
      body += piece;
      count += static_cast<int>(Tokens(piece).size());
    };
    while (count < words) {
      int roll = Uniform(rng, 0, 99);
      if (roll < 45) {
        append(Pick(rng, kFiller));
      } else if (roll < 60) {
        append(Pick(rng, kPool));
      } else if (roll < 85 && !planted.empty()) {
        std::string s = Pick(rng, planted);
        int variant = Uniform(rng, 0, 5);
        if (variant == 0) s = Lower(s);
        if (variant == 1) s = Upper(s);
        if (variant == 2) s += "s";  // breaks the right boundary
        if (variant == 3) s = "anti-" + s;
        if (variant == 4) s += Chance(rng, 0.5) ? "," : ".";
        append(s);
      } else if (roll < 93 && !definitions.empty()) {
        const auto &[long_form, abbr] = Pick(rng, definitions);
        append(long_form + " (" + abbr + ")");
      } else {
        append(Pick(rng, kPool) + " " + Pick(rng, kPool));
      }
    }
    body += ".";
    c.documents.push_back(Document{"doc" + std::to_string(d),
                                   Capitalize(Pick(rng, kPool)), body, ""});
  }
  return c;
}

// --- Canonicalization --------------------------------------------------------

std::optional<NearestResult> ExhaustiveNearest(
    const RelationVocabulary &relations, const EmbeddingModel &model,
    const std::string &phrase) {
  auto mean = [&](const std::string &text) -> std::optional<std::vector<double>> {
    std::vector<double> sum(model.dimension(), 0.0);
    int known = 0;
    for (const std::string &t : Tokens(Lower(text))) {
      const std::vector<double> *v = model.Find(t);
      if (v == nullptr) continue;
      for (int k = 0; k < model.dimension(); ++k) sum[k] += (*v)[k];
      ++known;
    }
    if (known == 0) return std::nullopt;
    for (double &x : sum) x /= known;
    return sum;
  };
  auto cosine = [](const std::vector<double> &a, const std::vector<double> &b) {
    double dot = 0, na = 0, nb = 0;
    for (size_t k = 0; k < a.size(); ++k) {
      dot += a[k] * b[k];
      na += a[k] * a[k];
      nb += b[k] * b[k];
    }
    if (na == 0 || nb == 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
  };

  std::optional<std::vector<double>> v = mean(phrase);
  if (!v) return std::nullopt;
  std::optional<NearestResult> best;
  // relations() is ordered by relation, each set by synonym, so keeping the
  // first of near-equal scores keeps the smaller (relation, synonym).
  for (const auto &[relation, synonyms] : relations.relations()) {
    for (const std::string &synonym : synonyms) {
      std::optional<std::vector<double>> w = mean(synonym);
      if (!w) continue;
      double sim = cosine(*v, *w);
      if (!best || sim > best->similarity + kSimilarityTieTolerance) {
        best = NearestResult{relation, synonym, sim};
      }
    }
  }
  return best;
}

RelationVocabulary SyntheticRelations() {
  RelationVocabulary r;
  r.Add("treats", {"treat", "cure", "therapy", "relieve"});
  r.Add("inhibits", {"inhibit", "block", "suppress"});
  r.Add("causes", {"cause", "induce", "trigger", "lead to"});
  r.Add("binds", {"bind", "attach to", "dock"});
  r.Add("located in", {"found in", "reside in", "locate"});
  return r;
}

EmbeddingModel SyntheticEmbeddings() {
  EmbeddingModel m(6);
  // Cluster axes: 0 treats, 1 inhibits, 2 causes, 3 binds, 4 located in,
  // 5 shared noise.
  m.Add("treat", {1.0, 0.1, 0.0, 0.0, 0.0, 0.1});
  m.Add("treats", {0.9, 0.1, 0.0, 0.0, 0.0, 0.2});
  m.Add("cure", {0.9, 0.0, 0.1, 0.0, 0.0, 0.1});
  m.Add("therapy", {0.8, 0.2, 0.0, 0.1, 0.0, 0.0});
  m.Add("relieve", {0.7, 0.3, 0.0, 0.0, 0.1, 0.0});
  m.Add("heal", {0.85, 0.0, 0.05, 0.0, 0.0, 0.3});
  m.Add("inhibit", {0.1, 1.0, 0.0, 0.0, 0.0, 0.1});
  m.Add("inhibits", {0.1, 0.9, 0.1, 0.0, 0.0, 0.1});
  m.Add("block", {0.0, 0.9, 0.0, 0.2, 0.0, 0.0});
  // Same vector as "bind": the embedding argmax ties toward "binds".
  m.Add("suppress", {0.0, 0.1, 0.0, 1.0, 0.0, 0.1});
  m.Add("reduce", {0.3, 0.8, 0.0, 0.0, 0.0, 0.2});
  m.Add("cause", {0.0, 0.0, 1.0, 0.0, 0.1, 0.0});
  m.Add("causes", {0.0, 0.1, 0.9, 0.0, 0.1, 0.0});
  m.Add("induce", {0.1, 0.0, 0.9, 0.1, 0.0, 0.1});
  m.Add("trigger", {0.0, 0.2, 0.8, 0.0, 0.0, 0.2});
  m.Add("lead", {0.0, 0.0, 0.6, 0.0, 0.3, 0.3});
  m.Add("to", {0.1, 0.1, 0.1, 0.1, 0.1, 0.5});
  m.Add("provoke", {0.0, 0.1, 0.85, 0.0, 0.0, 0.1});
  m.Add("bind", {0.0, 0.1, 0.0, 1.0, 0.0, 0.1});
  m.Add("binds", {0.0, 0.0, 0.0, 0.9, 0.1, 0.1});
  m.Add("attach", {0.0, 0.0, 0.1, 0.9, 0.2, 0.0});
  m.Add("dock", {0.1, 0.0, 0.0, 0.8, 0.0, 0.2});
  m.Add("found", {0.0, 0.0, 0.1, 0.0, 0.9, 0.1});
  m.Add("in", {0.0, 0.0, 0.0, 0.1, 0.6, 0.5});
  m.Add("reside", {0.0, 0.0, 0.0, 0.1, 1.0, 0.0});
  m.Add("locate", {0.0, 0.0, 0.0, 0.0, 1.0, 0.1});
  m.Add("located", {0.0, 0.0, 0.0, 0.0, 0.95, 0.1});
  m.Add("strongly", {0.2, 0.2, 0.2, 0.2, 0.2, 0.9});
  m.Add("partially", {0.1, 0.3, 0.1, 0.1, 0.1, 0.8});
  m.Add("not", {-0.3, 0.1, -0.2, 0.0, 0.0, 0.6});
  m.Add("against", {0.4, 0.4, -0.1, 0.0, 0.0, 0.3});
  m.Add("near", {0.0, 0.0, 0.0, 0.3, 0.7, 0.2});
  return m;
}

// --- OpenIE ------------------------------------------------------------------

FilterCorpus RandomFilterCorpus(Rng &rng, int triples) {
  static const std::vector<std::tuple<std::string, std::string, std::string>>
      kEntities = {
          {"Q1", "Person", "Albert Einstein"}, {"Q1", "Person", "Einstein"},
          {"Q2", "Country", "United States"},  {"Q3", "Org", "European Parliament"},
          {"Q4", "Drug", "aspirin"},           {"Q5", "Disease", "fever"},
          {"Q6", "GPE", "China"},              {"Q7", "Org", "The Hague Court"},
          {"Q8", "Drug", "fever"},             {"Q9", "Gene", "COX-2"}};
  static const std::vector<std::string> kWords = {
      "large", "cohort", "of", "new", "results", "power", "list", "strong",
      "its",   "own",    "true", "global", "reduced"};
  static const std::vector<std::string> kPredicates = {
      "was visiting", "treats", "had maintained", "did not cure", "inhibits",
      "is poised to become"};
  FilterCorpus corpus;
  const int docs = std::max(1, triples / 20);
  std::vector<std::vector<size_t>> doc_entities(docs);
  for (int d = 0; d < docs; ++d) {
    const std::string id = "d" + std::to_string(d);
    int64_t pos = 0;
    for (size_t e = 0; e < kEntities.size(); ++e) {
      if (!Chance(rng, 0.5)) continue;
      doc_entities[d].push_back(e);
      const auto &[eid, type, surface] = kEntities[e];
      std::string s = Chance(rng, 0.2) ? Lower(surface) : surface;
      corpus.mentions.push_back(EntityMention{
          id, {pos, pos + static_cast<int64_t>(s.size())}, s, eid, type,
          MentionOrigin::kDictionary});
      pos += static_cast<int64_t>(s.size()) + 1;
    }
  }
  auto phrase = [&](int d) {
    int roll = Uniform(rng, 0, 9);
    std::string s;
    if (roll < 6) {
      size_t e = Uniform(rng, 0, static_cast<int>(kEntities.size()) - 1);
      s = std::get<2>(kEntities[e]);
      int v = Uniform(rng, 0, 5);
      if (v == 0) s = "the " + s;
      if (v == 1) s = Upper(s);
      if (v == 2) s = Pick(rng, kWords) + " " + s;
      if (v == 3) s = s + " " + Pick(rng, kWords);
      if (v == 4) s = "a " + Pick(rng, kWords) + " " + s + "s";
    } else {
      int n = Uniform(rng, 1, 4);
      for (int k = 0; k < n; ++k) {
        if (!s.empty()) s += ' ';
        s += Pick(rng, kWords);
      }
    }
    (void)d;
    return s;
  };
  for (int t = 0; t < triples; ++t) {
    int d = Uniform(rng, 0, docs - 1);
    OpenIETriple triple;
    triple.doc_id = "d" + std::to_string(d);
    triple.subject = phrase(d);
    triple.predicate = Pick(rng, kPredicates);
    triple.object = phrase(d);
    triple.sentence = triple.subject + " " + triple.predicate + " " +
                      triple.object + ".";
    triple.confidence = Uniform(rng, 0, 100) / 100.0;
    corpus.triples.push_back(triple);
  }
  return corpus;
}

// --- Round-trip instances ----------------------------------------------------

std::string RandomText(Rng &rng, int max_len, bool allow_breaks) {
  static const std::vector<std::string> kPieces = {
      "a", "b", "Z", "q", "7", " ", " ", "-", ",", ".", ";", "(", ")", "|",
      "\\", "\\t", "#", "'", "\"", "\xc3\xa9", "\xce\xb1", "\xe2\x80\x93",
      "_", "=", "/"};
  static const std::vector<std::string> kBreaks = {"\t", "\n", "\r"};
  std::string s;
  const int len = Uniform(rng, 1, max_len);
  for (int i = 0; i < len; ++i) {
    if (allow_breaks && Chance(rng, 0.05)) {
      s += Pick(rng, kBreaks);
    } else {
      s += Pick(rng, kPieces);
    }
  }
  return s;
}

namespace {

// Non-empty, no surrounding whitespace, no tab or line break.
std::string RandomLineText(Rng &rng, int max_len) {
  std::string s;
  while (true) {
    s = RandomText(rng, max_len, false);
    std::string_view t = Trim(s);
    if (!t.empty()) return std::string(t);
  }
}

std::string RandomId(Rng &rng, const std::string &prefix) {
  return prefix + std::to_string(Uniform(rng, 0, 99999));
}

std::string RandomWord(Rng &rng) {
  static const std::string kLetters = "abcdefghijklmnopqrstuvwxyz";
  std::string s;
  const int len = Uniform(rng, 1, 8);
  for (int i = 0; i < len; ++i) s += kLetters[Uniform(rng, 0, 25)];
  return s;
}

Argument RandomArgument(Rng &rng) {
  Argument a;
  a.text = RandomText(rng, 20, true);
  if (Chance(rng, 0.7)) {
    a.entity_id = RandomId(rng, "Q");
    a.entity_type = Chance(rng, 0.5) ? "Person" : "Drug\\X";
  }
  if (Chance(rng, 0.6)) {
    int64_t s = Uniform(rng, 0, 500);
    a.span = TextSpan{s, s + Uniform(rng, 1, 40)};
  }
  return a;
}

RawStatement RandomStatement(Rng &rng) {
  RawStatement s;
  s.doc_id = RandomId(rng, "doc");
  s.sentence_index = Uniform(rng, -1, 20);
  s.subject = RandomArgument(rng);
  s.object = RandomArgument(rng);
  s.predicate_surface = RandomText(rng, 15, true);
  s.predicate_lemma = Chance(rng, 0.1) ? "" : RandomText(rng, 15, true);
  s.trigger = static_cast<TriggerKind>(Uniform(rng, 0, 2));
  s.trigger_token = Uniform(rng, -1, 30);
  s.extractor = static_cast<Extractor>(Uniform(rng, 0, 1));
  s.source = Uniform(rng, -1, 1000);
  s.sentence = RandomText(rng, 60, true);
  return s;
}

double RandomDouble(Rng &rng) {
  switch (Uniform(rng, 0, 3)) {
    case 0: return 0.0;
    case 1: return 1.0;
    case 2: return Uniform(rng, 0, 1000) / 1000.0;
    default: return std::uniform_real_distribution<double>(0, 1)(rng);
  }
}

}  // namespace

std::vector<Document> RandomDocuments(Rng &rng, bool line_safe) {
  std::vector<Document> docs;
  std::set<std::string> ids;
  const int n = Uniform(rng, 0, 12);
  for (int i = 0; i < n; ++i) {
    Document d;
    d.id = RandomId(rng, Chance(rng, 0.5) ? "PMID" : "w");
    if (!ids.insert(d.id).second) continue;
    d.title = Chance(rng, 0.1) ? "" : RandomText(rng, 30, !line_safe);
    d.body = RandomText(rng, 200, !line_safe);
    if (!line_safe && Chance(rng, 0.3)) d.collection = RandomWord(rng);
    docs.push_back(d);
  }
  std::sort(docs.begin(), docs.end(),
            [](const Document &a, const Document &b) { return a.id < b.id; });
  return docs;
}

std::vector<SentenceParse> RandomParses(Rng &rng) {
  std::vector<SentenceParse> parses;
  std::set<std::pair<std::string, int>> keys;
  const int n = Uniform(rng, 0, 8);
  for (int i = 0; i < n; ++i) {
    SentenceParse p = RandomTree(rng, Uniform(rng, 1, 15));
    p.doc_id = RandomId(rng, "d");
    p.sentence_index = Uniform(rng, 0, 5);
    if (!keys.insert({p.doc_id, p.sentence_index}).second) continue;
    int64_t offset = Uniform(rng, 0, 300);
    for (Token &t : p.tokens) {
      t.surface = RandomLineText(rng, 6);
      for (char &c : t.surface) {
        if (c == ' ') c = '_';
      }
      t.lemma = RandomLineText(rng, 6);
      t.upos = Chance(rng, 0.5) ? "NOUN" : "VERB";
      t.deprel = Chance(rng, 0.5) ? "nsubj:pass" : "obj";
      t.span = {offset, offset + Uniform(rng, 1, 9)};
      offset = t.span.end + Uniform(rng, 0, 2);
    }
    p.text = Chance(rng, 0.2) ? "" : RandomLineText(rng, 50);
    parses.push_back(p);
  }
  std::sort(parses.begin(), parses.end(),
            [](const SentenceParse &a, const SentenceParse &b) {
              return std::tie(a.doc_id, a.sentence_index) <
                     std::tie(b.doc_id, b.sentence_index);
            });
  return parses;
}

std::vector<EntityMention> RandomMentions(Rng &rng) {
  std::vector<EntityMention> out;
  const int n = Uniform(rng, 0, 30);
  for (int i = 0; i < n; ++i) {
    EntityMention m;
    m.doc_id = RandomId(rng, "d");
    int64_t s = Uniform(rng, 0, 400);
    m.span = {s, s + Uniform(rng, 1, 30)};
    m.surface = RandomText(rng, 20, true);
    m.entity_id = RandomId(rng, "Q");
    m.entity_type = Chance(rng, 0.5) ? "Person" : "Gene\tX";
    m.origin = Chance(rng, 0.5) ? MentionOrigin::kDictionary
                                : MentionOrigin::kExternal;
    out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RawStatement> RandomStatements(Rng &rng) {
  std::vector<RawStatement> out;
  const int n = Uniform(rng, 0, 20);
  for (int i = 0; i < n; ++i) out.push_back(RandomStatement(rng));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<OpenIETriple> RandomTriples(Rng &rng) {
  std::vector<OpenIETriple> out;
  const int n = Uniform(rng, 0, 20);
  for (int i = 0; i < n; ++i) {
    OpenIETriple t;
    t.doc_id = RandomId(rng, "d");
    t.sentence = RandomText(rng, 60, true);
    t.subject = RandomLineText(rng, 15);
    t.predicate = RandomLineText(rng, 10);
    t.object = RandomLineText(rng, 15);
    if (Chance(rng, 0.8)) t.confidence = RandomDouble(rng);
    out.push_back(t);
  }
  return out;  // the writer keeps input order
}

std::vector<CanonicalStatement> RandomCanonical(Rng &rng) {
  std::vector<CanonicalStatement> out;
  const int n = Uniform(rng, 0, 20);
  for (int i = 0; i < n; ++i) {
    CanonicalStatement c;
    c.statement = RandomStatement(rng);
    c.mapping = static_cast<MappingKind>(Uniform(rng, 0, 2));
    if (c.mapping != MappingKind::kUnmapped) c.relation = RandomText(rng, 12, true);
    if (c.mapping == MappingKind::kEmbedding) {
      c.similarity = std::uniform_real_distribution<double>(-1, 1)(rng);
    }
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

EntityVocabulary RandomEntityVocab(Rng &rng) {
  EntityVocabulary v;
  const int n = Uniform(rng, 0, 15);
  for (int i = 0; i < n; ++i) {
    EntityEntry e;
    e.entity_id = RandomId(rng, "Q");
    e.entity_type = Chance(rng, 0.5) ? "Person" : "Country";
    if (v.Find(e.entity_id, e.entity_type) != nullptr) continue;
    const int k = Uniform(rng, 1, 4);
    std::vector<std::string> synonyms;
    for (int j = 0; j < k; ++j) {
      std::string s = RandomLineText(rng, 20);
      std::erase(s, ';');
      s = std::string(Trim(s));
      if (!s.empty()) synonyms.push_back(s);
    }
    if (synonyms.empty()) synonyms.push_back(RandomWord(rng));
    e.preferred_label = synonyms.front();
    e.synonyms.insert(synonyms.begin(), synonyms.end());
    v.Add(e);
  }
  return v;
}

RelationVocabulary RandomRelationVocab(Rng &rng) {
  RelationVocabulary v;
  std::set<std::string> used;
  const int n = Uniform(rng, 0, 10);
  for (int i = 0; i < n; ++i) {
    std::string name = RandomWord(rng) + (Chance(rng, 0.3) ? " in" : "");
    if (!used.insert(name).second) continue;
    std::vector<std::string> synonyms;
    const int k = Uniform(rng, 0, 5);
    for (int j = 0; j < k; ++j) {
      std::string s = RandomWord(rng);
      if (Chance(rng, 0.3)) s += " " + RandomWord(rng);
      if (!used.insert(s).second) continue;
      synonyms.push_back(s);
    }
    v.Add(name, synonyms);
  }
  return v;
}

TypeConstraintSet RandomConstraints(Rng &rng) {
  static const std::vector<std::string> kTypes = {"Person", "Drug", "Disease",
                                                  "Gene",   "Award", "Org"};
  TypeConstraintSet c;
  const int n = Uniform(rng, 0, 8);
  for (int i = 0; i < n; ++i) {
    std::set<std::string> s = {Pick(rng, kTypes)};
    std::set<std::string> o = {Pick(rng, kTypes)};
    if (Chance(rng, 0.4)) s.insert(Pick(rng, kTypes));
    if (Chance(rng, 0.4)) o.insert(Pick(rng, kTypes));
    c.Add(RandomWord(rng) + (Chance(rng, 0.3) ? " of" : ""), s, o);
  }
  return c;
}

IgnoreList RandomIgnoreList(Rng &rng) {
  std::vector<std::string> terms;
  const int n = Uniform(rng, 0, 10);
  for (int i = 0; i < n; ++i) {
    std::string s = RandomWord(rng);
    if (Chance(rng, 0.3)) s += " " + RandomWord(rng);
    terms.push_back(s);
  }
  return IgnoreList(terms);
}

// --- Files -------------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> SnapshotTree(
    const std::filesystem::path &root, const std::vector<std::string> &skip) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &entry :
       std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (std::find(skip.begin(), skip.end(), name) != skip.end()) continue;
    out.push_back({std::filesystem::relative(entry.path(), root).string(),
                   ReadFile(entry.path())});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kgx::testing
