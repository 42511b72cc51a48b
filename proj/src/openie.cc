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

#include "kgx/openie.h"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

#include "kgx/text.h"

namespace kgx {

namespace {

bool Contained(const std::string &sentence, const std::string &phrase) {
  return sentence.find(NormalizePhrase(phrase)) != std::string::npos;
}

}  // namespace

OpenIELoadResult ParseOpenIETsv(std::string_view content,
                                std::string_view source) {
  OpenIELoadResult result;
  std::vector<std::string> lines = SplitLines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string &line = lines[i];
    const std::string where = std::string(source) + ":" + std::to_string(i + 1);
    if (Trim(line).empty()) continue;
    if (i == 0 && line.rfind("doc_id\t", 0) == 0) continue;
    std::vector<std::string> f = Split(line, '\t');
    if (f.size() != 5 && f.size() != 6) {
      throw Error(where + ": expected 5 or 6 columns, got " +
                  std::to_string(f.size()));
    }
    OpenIETriple t;
    t.doc_id = UnescapeField(f[0]);
    t.sentence = UnescapeField(f[1]);
    t.subject = UnescapeField(f[2]);
    t.predicate = UnescapeField(f[3]);
    t.object = UnescapeField(f[4]);
    if (t.doc_id.empty()) throw Error(where + ": empty doc_id");
    if (Trim(t.subject).empty() || Trim(t.predicate).empty() ||
        Trim(t.object).empty()) {
      throw Error(where + ": empty phrase");
    }
    if (f.size() == 6 && !f[5].empty()) {
      double c = 0;
      if (!ParseDouble(f[5], &c) || c < 0 || c > 1) {
        throw Error(where + ": confidence '" + f[5] + "' not in [0,1]");
      }
      t.confidence = c;
    }
    std::string sentence = NormalizePhrase(t.sentence);
    if (!Contained(sentence, t.subject) || !Contained(sentence, t.object)) {
      result.warnings.push_back(where +
                                ": argument phrase not found in sentence");
    }
    result.triples.push_back(std::move(t));
  }
  return result;
}

OpenIELoadResult LoadOpenIETsv(const std::filesystem::path &path) {
  return ParseOpenIETsv(ReadFile(path), path.string());
}

std::string FormatOpenIETsv(const std::vector<OpenIETriple> &triples) {
  std::string out = "doc_id\tsentence\tsubject\tpredicate\tobject\tconfidence\n";
  for (const OpenIETriple &t : triples) {
    out += EscapeField(t.doc_id) + '\t' + EscapeField(t.sentence) + '\t' +
           EscapeField(t.subject) + '\t' + EscapeField(t.predicate) + '\t' +
           EscapeField(t.object) + '\t';
    if (t.confidence) out += FormatDouble(*t.confidence);
    out += '\n';
  }
  return out;
}

const PredicateLexicon &PredicateLexicon::Default() {
  static const PredicateLexicon *lexicon = new PredicateLexicon{
      // Articles, auxiliaries, modals, pronouns, conjunctions and the
      // infinitive marker. Prepositions stay: "born in" keeps its "in".
      {"a",     "an",    "the",   "do",    "does",  "did",   "can",
       "could", "will",  "would", "shall", "should", "may",  "might",
       "must",  "to",    "and",   "or",    "but",   "nor",   "i",
       "you",   "he",    "she",   "it",    "we",    "they",  "me",
       "him",   "her",   "us",    "them",  "his",   "its",   "their",
       "our",   "my",    "your",  "this",  "that",  "these", "those",
       "which", "who",   "whom",  "whose", "what",  "there", "itself",
       "himself", "herself", "themselves", "also", "then", "than"},
      {"very",   "too",    "so",     "just",   "still",  "already", "even",
       "often",  "always", "again",  "soon",   "now",    "once",    "ever",
       "almost", "quite",  "rather", "later",  "yet",    "thus",    "hence",
       "however", "well",  "further", "together", "perhaps", "indeed",
       "much",   "more",   "most",   "less",   "least",  "only",    "first",
       "instead", "subsequently", "eventually"},
      {"apply",  "rely",   "reply",   "supply",  "imply",  "comply",
       "multiply", "ally", "rally",   "tally",   "bully",  "fly",
       "belly",  "family", "italy",   "july",    "assembly", "anomaly",
       "oily",   "holy",   "ugly",    "early",   "only",   "likely"}};
  return *lexicon;
}

namespace {

std::set<std::string> LoadTerms(const std::filesystem::path &path) {
  std::set<std::string> terms;
  for (const std::string &line : SplitLines(ReadFile(path))) {
    std::string_view t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    terms.insert(CaseFold(t));
  }
  return terms;
}

}  // namespace

PredicateLexicon LoadPredicateLexicon(const std::filesystem::path &stopwords,
                                      const std::filesystem::path &adverbs) {
  PredicateLexicon lexicon = PredicateLexicon::Default();
  if (!stopwords.empty()) lexicon.stopwords = LoadTerms(stopwords);
  if (!adverbs.empty()) lexicon.adverbs = LoadTerms(adverbs);
  return lexicon;
}

namespace {

const std::unordered_map<std::string, std::string> &IrregularForms() {
  static const auto *forms = new std::unordered_map<std::string, std::string>{
      {"began", "begin"},     {"begun", "begin"},     {"became", "become"},
      {"wrote", "write"},     {"written", "write"},   {"writing", "write"},
      {"won", "win"},         {"took", "take"},       {"taken", "take"},
      {"made", "make"},       {"gave", "give"},       {"given", "give"},
      {"found", "find"},      {"got", "get"},         {"gotten", "get"},
      {"went", "go"},         {"gone", "go"},         {"came", "come"},
      {"saw", "see"},         {"seen", "see"},        {"knew", "know"},
      {"known", "know"},      {"led", "lead"},        {"left", "leave"},
      {"held", "hold"},       {"told", "tell"},       {"said", "say"},
      {"paid", "pay"},        {"met", "meet"},        {"ran", "run"},
      {"brought", "bring"},   {"bought", "buy"},      {"thought", "think"},
      {"taught", "teach"},    {"caught", "catch"},    {"sought", "seek"},
      {"fought", "fight"},    {"built", "build"},     {"sent", "send"},
      {"spent", "spend"},     {"lost", "lose"},       {"felt", "feel"},
      {"kept", "keep"},       {"slept", "sleep"},     {"meant", "mean"},
      {"stood", "stand"},     {"understood", "understand"},
      {"fell", "fall"},       {"fallen", "fall"},     {"drew", "draw"},
      {"drawn", "draw"},      {"grew", "grow"},       {"grown", "grow"},
      {"threw", "throw"},     {"thrown", "throw"},    {"shown", "show"},
      {"chose", "choose"},    {"chosen", "choose"},   {"spoke", "speak"},
      {"spoken", "speak"},    {"broke", "break"},     {"broken", "break"},
      {"rose", "rise"},       {"risen", "rise"},      {"drove", "drive"},
      {"driven", "drive"},    {"ate", "eat"},         {"eaten", "eat"},
      {"forgot", "forget"},   {"forgotten", "forget"}, {"hid", "hide"},
      {"hidden", "hide"},     {"bore", "bear"},       {"borne", "bear"},
      {"struck", "strike"},   {"stuck", "stick"},     {"sold", "sell"},
      {"shot", "shoot"},      {"sat", "sit"},         {"laid", "lay"},
      {"lain", "lie"},        {"used", "use"},        {"using", "use"},
      {"added", "add"},       {"adding", "add"},      {"agreed", "agree"},
      {"freed", "free"},      {"guaranteed", "guarantee"},
      {"died", "die"},        {"dying", "die"},       {"lied", "lie"},
      {"lying", "lie"},       {"tied", "tie"},        {"created", "create"},
      {"creating", "create"}, {"fed", "feed"},        {"bred", "breed"},
      {"fled", "flee"},       {"dealt", "deal"},      {"lent", "lend"},
      {"bent", "bend"},       {"wore", "wear"},       {"worn", "wear"},
      {"swore", "swear"},     {"sworn", "swear"},     {"tore", "tear"},
      {"torn", "tear"},       {"flew", "fly"},        {"flown", "fly"},
      {"blew", "blow"},       {"blown", "blow"},      {"sang", "sing"},
      {"sung", "sing"},       {"rang", "ring"},       {"rung", "ring"},
      {"swam", "swim"},       {"shook", "shake"},     {"shaken", "shake"},
      {"woke", "wake"},       {"woken", "wake"},      {"froze", "freeze"},
      {"frozen", "freeze"},   {"stole", "steal"},     {"stolen", "steal"},
      {"rode", "ride"},       {"ridden", "ride"},     {"arose", "arise"},
      {"arisen", "arise"},    {"overcame", "overcome"},
      {"undertook", "undertake"}, {"undertaken", "undertake"},
      {"withdrew", "withdraw"}, {"withdrawn", "withdraw"},
      {"sprang", "spring"},   {"sprung", "spring"},
      {"bound", "bind"},      {"wound", "wind"},      {"hung", "hang"},
      {"dug", "dig"},         {"won't", "will"},      {"did", "do"},
      {"done", "do"},         {"does", "do"},         {"doing", "do"},
      {"goes", "go"},         {"going", "go"},        {"seeing", "see"},
      {"being", "be"},        {"having", "have"}};
  return *forms;
}

// Stems that need a final "e" back but fall outside the suffix patterns.
const std::set<std::string> &EStems() {
  static const auto *stems = new std::set<std::string>{
      "chang",  "arrang", "challeng", "exchang", "plung",  "stor",
      "scor",   "ignor",  "explor",   "restor",  "ador",   "implor",
      "deplor", "caus",   "abus",     "amus",    "accus",  "refus",
      "confus", "diffus", "excus",    "fus",     "mus",    "complet",
      "delet",  "compet", "invit",    "cit",     "excit",  "recit",
      "unit",   "ignit",  "creat",    "rul",     "guid",   "hous",
      "argu",   "rescu"};
  return *stems;
}

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool IsConsonant(char c) { return IsAsciiLetter(c) && !IsVowel(c); }

bool HasVowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return IsVowel(c) || c == 'y'; });
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// Restores the base form of a stem left after removing "ed" or "ing".
std::string FixStem(std::string stem) {
  const size_t n = stem.size();
  if (EStems().count(stem) > 0) return stem + "e";
  const char last = stem[n - 1];
  const char prev = n >= 2 ? stem[n - 2] : '\0';
  const char prev2 = n >= 3 ? stem[n - 3] : '\0';
  // stopp -> stop, occurr -> occur
  if (n >= 3 && last == prev && IsConsonant(last) && last != 'l' &&
      last != 's' && last != 'z') {
    stem.pop_back();
    return stem;
  }
  // consonant + single vowel + last
  const bool cv = n >= 3 && IsConsonant(prev2) && IsVowel(prev);
  bool add_e = false;
  switch (last) {
    case 'v':
    case 'u':
      add_e = true;
      break;
    case 'z':
      add_e = prev != 'z';
      break;
    case 'c':
      add_e = IsVowel(prev) || prev == 'n';
      break;
    case 't':
      add_e = (prev == 'a' && IsConsonant(prev2) && n >= 4) ||
              (prev == 'u' && IsConsonant(prev2)) ||
              (prev == 'o' && IsConsonant(prev2) && stem != "pivot");
      break;
    case 'r':
      add_e = cv && (prev == 'a' || prev == 'i' || prev == 'u');
      break;
    case 's':
      add_e = (prev == 'a' || prev == 'i' || prev == 'o' || prev == 'e') &&
              !EndsWith(stem, "ias") && !EndsWith(stem, "canvas");
      break;
    case 'l':
      add_e = (IsConsonant(prev) && prev != 'l' && prev != 'r') ||
              (cv && (prev == 'i' || prev == 'u'));
      break;
    case 'd':
      add_e = cv && prev != 'e';
      break;
    case 'm':
      add_e = cv && prev != 'e';
      break;
    case 'n':
      add_e = cv && (prev == 'i' || prev == 'u');
      break;
    case 'k':
      add_e = cv && prev != 'e';
      break;
    case 'p':
      add_e = cv && prev != 'e' && n <= 5;
      break;
    case 'b':
      add_e = cv && (prev == 'i' || prev == 'o' || prev == 'u');
      break;
    case 'g':
      add_e = prev == 'd' || prev == 'r' || (cv && prev == 'a');
      break;
    default:
      break;
  }
  if (add_e) stem += 'e';
  return stem;
}

// One application of the rules; LemmatizeWord iterates to a fixed point.
// Irregular forms map to fixed points and every suffix rule shortens the
// word, so the iteration terminates.
std::string LemmatizeOnce(const std::string &w) {
  auto it = IrregularForms().find(w);
  if (it != IrregularForms().end()) return it->second;
  const size_t n = w.size();
  if (n <= 3) return w;
  if (!std::all_of(w.begin(), w.end(), IsAsciiLetter)) return w;
  if (n > 4 && (EndsWith(w, "ies") || EndsWith(w, "ied"))) {
    return w.substr(0, n - 3) + "y";
  }
  if (EndsWith(w, "eed")) return w;
  if (EndsWith(w, "ing")) {
    std::string stem = w.substr(0, n - 3);
    if (stem.size() >= 2 && HasVowel(stem)) return FixStem(stem);
    return w;
  }
  if (EndsWith(w, "ed")) {
    std::string stem = w.substr(0, n - 2);
    if (stem.size() >= 2 && HasVowel(stem)) return FixStem(stem);
    return w;
  }
  if (EndsWith(w, "sses") || EndsWith(w, "ches") || EndsWith(w, "shes") ||
      EndsWith(w, "xes") || EndsWith(w, "zzes") || EndsWith(w, "oes")) {
    return w.substr(0, n - 2);
  }
  if (EndsWith(w, "ss") || EndsWith(w, "us") || EndsWith(w, "is") ||
      EndsWith(w, "as") || EndsWith(w, "os")) {
    return w;
  }
  if (w.back() == 's') return w.substr(0, n - 1);
  return w;
}

bool IsBeOrHave(std::string_view w) {
  static const std::set<std::string, std::less<>> forms = {
      "be",   "is",  "am",   "are",  "was",    "were", "been",
      "being", "'s", "'re", "'m",   "have",   "has",  "had",
      "having", "'ve", "'d"};
  return forms.count(w) > 0;
}

bool IsNegationWord(std::string_view w) {
  return w == "not" || w == "n't" || w == "never" || w == "no";
}

std::string StripPunctuation(std::string_view w) {
  auto keep = [](char c) { return IsWordChar(c) || c == '\'' || c == '-'; };
  size_t b = 0;
  size_t e = w.size();
  while (b < e && (!keep(w[b]) || w[b] == '-')) ++b;
  while (e > b && (!keep(w[e - 1]) || w[e - 1] == '-')) --e;
  std::string out;
  for (size_t i = b; i < e; ++i) out += keep(w[i]) ? w[i] : ' ';
  return out;
}

// Splits contractions: "didn't" -> did n't, "can't" -> can n't,
// "won't" -> will n't; possessive or copular "'s" is dropped as a separate
// token so it falls into the be/have filter.
void SplitContraction(const std::string &w, std::vector<std::string> *out) {
  if (w == "can't" || w == "cannot") {
    out->push_back("can");
    out->push_back("n't");
    return;
  }
  if (w == "won't") {
    out->push_back("will");
    out->push_back("n't");
    return;
  }
  if (w.size() > 3 && EndsWith(w, "n't")) {
    out->push_back(w.substr(0, w.size() - 3));
    out->push_back("n't");
    return;
  }
  size_t apos = w.find('\'');
  if (apos != std::string::npos && apos > 0) {
    out->push_back(w.substr(0, apos));
    out->push_back(w.substr(apos));
    return;
  }
  out->push_back(w);
}

bool IsAdverb(const std::string &w, const PredicateLexicon &lexicon) {
  if (lexicon.adverbs.count(w) > 0) return true;
  return w.size() >= 5 && EndsWith(w, "ly") && lexicon.ly_words.count(w) == 0;
}

std::string LemmatizeToken(const std::string &w) {
  size_t dash = w.rfind('-');
  if (dash == std::string::npos) return LemmatizeWord(w);
  return w.substr(0, dash + 1) + LemmatizeWord(w.substr(dash + 1));
}

}  // namespace

std::string LemmatizeWord(const std::string &word) {
  std::string cur = word;
  for (;;) {
    std::string next = LemmatizeOnce(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

std::string NormalizePredicate(std::string_view phrase, bool keep_negations,
                               const PredicateLexicon &lexicon) {
  std::vector<std::string> tokens;
  for (const std::string &raw : SplitWhitespace(CaseFold(phrase))) {
    for (const std::string &piece : SplitWhitespace(StripPunctuation(raw))) {
      // Splitting on inner punctuation or contractions can expose edge
      // hyphens again.
      std::vector<std::string> parts;
      SplitContraction(StripPunctuation(piece), &parts);
      for (const std::string &part : parts) {
        std::string word = StripPunctuation(part);
        if (!word.empty()) tokens.push_back(std::move(word));
      }
    }
  }
  auto dropped = [&](const std::string &w) {
    return w.empty() || lexicon.stopwords.count(w) > 0 || IsBeOrHave(w) ||
           IsAdverb(w, lexicon) || w[0] == '\'';
  };
  std::vector<std::string> kept;
  for (const std::string &w : tokens) {
    if (IsNegationWord(w)) {
      if (keep_negations) kept.push_back("not");
      continue;
    }
    if (dropped(w)) continue;
    std::string lemma = LemmatizeToken(w);
    // The lemma is filtered again so that the result is a fixed point.
    if (dropped(lemma) || IsNegationWord(lemma)) continue;
    kept.push_back(std::move(lemma));
  }
  return Join(kept, " ");
}

std::string_view FilterModeName(FilterMode mode) {
  switch (mode) {
    case FilterMode::kNone:
      return "none";
    case FilterMode::kPartial:
      return "partial";
    case FilterMode::kExact:
      return "exact";
    case FilterMode::kSubject:
      return "subject";
  }
  return "none";
}

bool ParseFilterMode(std::string_view s, FilterMode *out) {
  for (FilterMode m : {FilterMode::kNone, FilterMode::kPartial,
                       FilterMode::kExact, FilterMode::kSubject}) {
    if (s == FilterModeName(m)) {
      *out = m;
      return true;
    }
  }
  return false;
}

namespace {

std::string StripArticle(const std::string &normalized) {
  for (std::string_view article : {"the ", "a ", "an "}) {
    if (normalized.size() > article.size() &&
        normalized.compare(0, article.size(), article) == 0) {
      return normalized.substr(article.size());
    }
  }
  return normalized;
}

struct EntityRef {
  std::string id;
  std::string type;
  std::string surface;

  auto operator<=>(const EntityRef &) const = default;
};

// Mentions of one document keyed by article-stripped normalized surface.
// Each (id, type) keeps its lexicographically smallest surface.
using EntitySurfaces =
    std::map<std::pair<std::string, std::string>, std::string>;
using SurfaceIndex = std::map<std::string, EntitySurfaces>;

SurfaceIndex IndexMentions(const std::vector<const EntityMention *> &mentions) {
  SurfaceIndex index;
  for (const EntityMention *m : mentions) {
    std::string key = StripArticle(NormalizePhrase(m->surface));
    if (key.empty()) continue;
    auto &entities = index[key];
    auto [it, inserted] =
        entities.emplace(std::make_pair(m->entity_id, m->entity_type), m->surface);
    if (!inserted && m->surface < it->second) it->second = m->surface;
  }
  return index;
}

std::vector<EntityRef> ExactEntities(const std::string &phrase,
                                     const SurfaceIndex &index) {
  std::vector<EntityRef> out;
  auto it = index.find(StripArticle(NormalizePhrase(phrase)));
  if (it == index.end()) return out;
  for (const auto &[key, surface] : it->second) {
    out.push_back(EntityRef{key.first, key.second, surface});
  }
  return out;
}

std::vector<EntityRef> PartialEntities(const std::string &phrase,
                                       const SurfaceIndex &index) {
  const std::string text = NormalizePhrase(phrase);
  EntitySurfaces found;
  for (const auto &[key, entities] : index) {
    bool contained = false;
    for (size_t pos = text.find(key); pos != std::string::npos;
         pos = text.find(key, pos + 1)) {
      if (OnWordBoundaries(text, pos, pos + key.size())) {
        contained = true;
        break;
      }
    }
    if (!contained) continue;
    for (const auto &[id_type, surface] : entities) {
      auto [it, inserted] = found.emplace(id_type, surface);
      if (!inserted && surface < it->second) it->second = surface;
    }
  }
  std::vector<EntityRef> out;
  for (const auto &[key, surface] : found) {
    out.push_back(EntityRef{key.first, key.second, surface});
  }
  return out;
}

Argument EntityArgument(const EntityRef &e) {
  return Argument{std::nullopt, e.surface, e.id, e.type};
}

Argument PhraseArgument(const std::string &phrase) {
  return Argument{std::nullopt, phrase, "", ""};
}

}  // namespace

std::vector<RawStatement> ApplyEntityFilter(
    const std::vector<OpenIETriple> &triples,
    const std::vector<EntityMention> &mentions, FilterMode mode,
    const EntityFilterOptions &options) {
  std::map<std::string, std::vector<const EntityMention *>> by_doc;
  for (const EntityMention &m : mentions) by_doc[m.doc_id].push_back(&m);
  std::map<std::string, SurfaceIndex> indexes;
  const SurfaceIndex empty;
  auto index_for = [&](const std::string &doc_id) -> const SurfaceIndex & {
    auto it = indexes.find(doc_id);
    if (it != indexes.end()) return it->second;
    auto m = by_doc.find(doc_id);
    if (m == by_doc.end()) return empty;
    return indexes.emplace(doc_id, IndexMentions(m->second)).first->second;
  };

  const PredicateLexicon &lexicon =
      options.lexicon ? *options.lexicon : PredicateLexicon::Default();
  std::vector<RawStatement> out;
  for (size_t i = 0; i < triples.size(); ++i) {
    const OpenIETriple &t = triples[i];
    RawStatement base;
    base.doc_id = t.doc_id;
    base.predicate_surface = t.predicate;
    base.predicate_lemma =
        NormalizePredicate(t.predicate, options.keep_negations, lexicon);
    base.trigger = TriggerKind::kPhrase;
    base.extractor = Extractor::kOpenIE;
    base.source = static_cast<int64_t>(i);
    base.sentence = t.sentence;

    std::vector<Argument> subjects;
    std::vector<Argument> objects;
    if (mode == FilterMode::kNone) {
      subjects.push_back(PhraseArgument(t.subject));
      objects.push_back(PhraseArgument(t.object));
    } else {
      const SurfaceIndex &index = index_for(t.doc_id);
      auto side = mode == FilterMode::kPartial ? PartialEntities : ExactEntities;
      for (const EntityRef &e : side(t.subject, index)) {
        subjects.push_back(EntityArgument(e));
      }
      if (mode == FilterMode::kSubject) {
        objects.push_back(PhraseArgument(t.object));
      } else {
        for (const EntityRef &e : side(t.object, index)) {
          objects.push_back(EntityArgument(e));
        }
      }
    }
    for (const Argument &s : subjects) {
      for (const Argument &o : objects) {
        RawStatement st = base;
        st.subject = s;
        st.object = o;
        out.push_back(std::move(st));
      }
    }
  }
  return out;
}

namespace {

bool OverlapsParse(const SentenceParse &parse, const EntityMention &m) {
  return std::any_of(parse.tokens.begin(), parse.tokens.end(),
                     [&](const Token &t) { return t.span.Overlaps(m.span); });
}

}  // namespace

std::set<std::pair<std::string, int>> RestrictToEntitySentences(
    const std::vector<SentenceParse> &parses,
    const std::vector<EntityMention> &mentions) {
  std::map<std::string, std::vector<const EntityMention *>> by_doc;
  for (const EntityMention &m : mentions) by_doc[m.doc_id].push_back(&m);
  std::set<std::pair<std::string, int>> out;
  for (const SentenceParse &p : parses) {
    auto it = by_doc.find(p.doc_id);
    if (it == by_doc.end()) continue;
    std::set<std::tuple<TextSpan, std::string, std::string>> seen;
    for (const EntityMention *m : it->second) {
      if (OverlapsParse(p, *m)) {
        seen.emplace(m->span, m->entity_id, m->entity_type);
      }
    }
    if (seen.size() >= 2) out.emplace(p.doc_id, p.sentence_index);
  }
  return out;
}

std::vector<OpenIETriple> SelectTriplesInSentences(
    const std::vector<OpenIETriple> &triples,
    const std::vector<SentenceParse> &parses,
    const std::set<std::pair<std::string, int>> &selected) {
  std::set<std::pair<std::string, std::string>> keys;
  for (const SentenceParse &p : parses) {
    if (selected.count({p.doc_id, p.sentence_index}) > 0) {
      keys.emplace(p.doc_id, NormalizePhrase(p.text));
    }
  }
  std::vector<OpenIETriple> out;
  for (const OpenIETriple &t : triples) {
    if (keys.count({t.doc_id, NormalizePhrase(t.sentence)}) > 0) {
      out.push_back(t);
    }
  }
  return out;
}

void AssignSentenceIndices(const std::vector<SentenceParse> &parses,
                           std::vector<RawStatement> *statements) {
  std::map<std::pair<std::string, std::string>, int> index;
  for (const SentenceParse &p : parses) {
    auto key = std::make_pair(p.doc_id, NormalizePhrase(p.text));
    auto it = index.find(key);
    if (it == index.end() || p.sentence_index < it->second) {
      index[key] = p.sentence_index;
    }
  }
  for (RawStatement &s : *statements) {
    auto it = index.find({s.doc_id, NormalizePhrase(s.sentence)});
    if (it != index.end()) s.sentence_index = it->second;
  }
}

}  // namespace kgx
