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

#include "kgx/linker.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "kgx/text.h"

namespace kgx {

namespace {

bool IsClauseBreak(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' ||
         c == '?' || c == '(' || c == ')' || c == '[' || c == ']';
}

bool IsShortFormChar(char c) {
  return IsWordChar(c) || c == '-' || c == '.' || c == '/' || c == '&';
}

// Start of the long-form window: at most eight whitespace-separated tokens
// before `end`, not crossing clause punctuation.
size_t WindowStart(std::string_view text, size_t end) {
  size_t start = end;
  int tokens = 0;
  size_t i = end;
  while (tokens < 8) {
    while (i > 0 && IsSpace(text[i - 1])) --i;
    if (i == 0) break;
    size_t token_end = i;
    while (i > 0 && !IsSpace(text[i - 1])) --i;
    std::string_view token = text.substr(i, token_end - i);
    size_t cut = token.find_last_of(".,;:!?()[]");
    if (cut != std::string_view::npos) {
      // Keep only the part after the break, if any.
      if (cut + 1 < token.size()) start = i + cut + 1;
      break;
    }
    start = i;
    ++tokens;
  }
  return start;
}

}  // namespace

std::vector<AbbreviationPair> DetectAbbreviations(std::string_view text) {
  std::vector<AbbreviationPair> pairs;
  for (size_t open = text.find('('); open != std::string_view::npos;
       open = text.find('(', open + 1)) {
    size_t close = open + 1;
    while (close < text.size() && IsShortFormChar(text[close])) ++close;
    if (close >= text.size() || text[close] != ')') continue;
    std::string_view inner = text.substr(open + 1, close - open - 1);
    size_t len = CodePointLength(inner);
    if (len < 2 || len > 10 || !IsWordChar(inner[0])) continue;
    std::string letters;
    for (char c : inner) {
      if (IsAsciiLetter(c)) letters.push_back(FoldChar(c));
    }
    if (letters.empty()) continue;

    size_t window_end = open;
    while (window_end > 0 && IsSpace(text[window_end - 1])) --window_end;
    if (window_end == 0 || IsClauseBreak(text[window_end - 1])) continue;
    size_t window_start = WindowStart(text, window_end);
    if (window_start >= window_end) continue;

    // Match letters right to left; the first letter must begin a word.
    int64_t pos = static_cast<int64_t>(window_end) - 1;
    const int64_t lo = static_cast<int64_t>(window_start);
    bool ok = true;
    for (int k = static_cast<int>(letters.size()) - 1; k >= 0; --k) {
      while (pos >= lo) {
        bool same = FoldChar(text[pos]) == letters[k];
        bool word_start = pos == 0 || !IsWordChar(text[pos - 1]);
        if (same && (k > 0 || word_start)) break;
        --pos;
      }
      if (pos < lo) {
        ok = false;
        break;
      }
      if (k > 0) --pos;
    }
    if (!ok) continue;
    pairs.push_back(AbbreviationPair{
        TextSpan{pos, static_cast<int64_t>(window_end)}, std::string(inner)});
  }
  return pairs;
}

std::vector<AbbreviationPair> DetectAbbreviations(const Document &doc) {
  return DetectAbbreviations(doc.Content());
}

std::string NormalizeForMatch(std::string_view s, bool case_sensitive) {
  return case_sensitive ? CollapseWhitespace(s) : NormalizePhrase(s);
}

bool IsShortHomonym(const std::string &synonym,
                    const std::vector<std::string> &synonyms) {
  if (synonym.empty() || synonym.find(' ') != std::string::npos) return false;
  const size_t len = CodePointLength(synonym);
  for (const std::string &other : synonyms) {
    if (CodePointLength(other) <= len) continue;
    for (const std::string &token : Split(other, ' ')) {
      if (token == synonym) return true;
    }
  }
  return false;
}

bool IsAbbreviationLike(std::string_view synonym) {
  std::string_view t = Trim(synonym);
  size_t len = CodePointLength(t);
  if (len < 2 || len > 10) return false;
  int upper = 0;
  for (char c : t) {
    if (IsSpace(c)) return false;
    if (IsAsciiUpper(c)) ++upper;
  }
  return upper >= 2;
}

// --- Matcher -----------------------------------------------------------------

int32_t Matcher::Child(int32_t node, unsigned char c) const {
  auto it = edges_.find((static_cast<uint64_t>(node) << 8) | c);
  return it == edges_.end() ? -1 : it->second;
}

int32_t Matcher::AddChild(int32_t node, unsigned char c) {
  uint64_t key = (static_cast<uint64_t>(node) << 8) | c;
  auto it = edges_.find(key);
  if (it != edges_.end()) return it->second;
  int32_t id = static_cast<int32_t>(terminal_.size());
  terminal_.push_back(-1);
  edges_.emplace(key, id);
  return id;
}

Matcher Matcher::Build(const EntityVocabulary &vocab, const IgnoreList &ignore,
                       const LinkerOptions &options) {
  if (options.min_length < 1) throw Error("min_length must be at least 1");
  Matcher m;
  m.options_ = options;
  m.terminal_.push_back(-1);  // root
  const size_t min_len = static_cast<size_t>(options.min_length);

  std::map<std::string, uint32_t> pattern_ids;
  for (const EntityEntry &entry : vocab.entries()) {
    const uint32_t entry_id = static_cast<uint32_t>(m.entities_.size());
    m.entities_.push_back({entry.entity_id, entry.entity_type});

    // Normalized synonym -> abbreviation flag (any raw variant).
    std::map<std::string, bool> normalized;
    for (const std::string &s : entry.synonyms) {
      std::string n = NormalizeForMatch(s, options.case_sensitive);
      if (n.empty()) continue;
      normalized[n] = normalized[n] || IsAbbreviationLike(s);
    }
    std::vector<std::string> folded;
    for (const std::string &s : entry.synonyms) folded.push_back(NormalizePhrase(s));

    for (const auto &[n, abbreviation] : normalized) {
      if (ignore.Contains(n)) continue;
      if (CodePointLength(n) < min_len) continue;
      auto [it, inserted] = pattern_ids.emplace(
          n, static_cast<uint32_t>(m.patterns_.size()));
      if (inserted) m.patterns_.push_back(Pattern{n, {}});
      Target target;
      target.entry = entry_id;
      target.short_homonym = IsShortHomonym(NormalizePhrase(n), folded);
      target.abbreviation = abbreviation;
      m.patterns_[it->second].targets.push_back(target);
    }
  }

  for (uint32_t id = 0; id < m.patterns_.size(); ++id) {
    int32_t node = 0;
    for (char c : m.patterns_[id].normalized) {
      node = m.AddChild(node, static_cast<unsigned char>(c));
    }
    m.terminal_[node] = static_cast<int32_t>(id);
  }
  return m;
}

std::vector<Matcher::Match> Matcher::FindAll(std::string_view text) const {
  std::vector<Match> matches;
  if (patterns_.empty()) return matches;
  const size_t n = text.size();
  const bool fold = !options_.case_sensitive;
  for (size_t b = 0; b < n; ++b) {
    if (IsSpace(text[b])) continue;
    if (b > 0 && IsWordChar(text[b - 1]) && IsWordChar(text[b])) continue;
    int32_t node = 0;
    size_t i = b;
    while (i < n && node >= 0) {
      char c = text[i];
      if (IsSpace(c)) {
        while (i < n && IsSpace(text[i])) ++i;
        node = Child(node, ' ');
        continue;
      }
      node = Child(node, static_cast<unsigned char>(fold ? FoldChar(c) : c));
      ++i;
      if (node < 0) break;
      int32_t pattern = terminal_[node];
      if (pattern < 0) continue;
      if (i < n && IsWordChar(text[i - 1]) && IsWordChar(text[i])) continue;
      matches.push_back(Match{
          TextSpan{static_cast<int64_t>(b), static_cast<int64_t>(i)},
          static_cast<uint32_t>(pattern)});
    }
  }
  return matches;
}

// --- Linking -----------------------------------------------------------------

namespace {

struct Candidate {
  TextSpan span;
  uint32_t entry;
  size_t pattern_length;
  bool short_homonym;
  bool abbreviation;
};

}  // namespace

std::vector<EntityMention> LinkContent(std::string_view doc_id,
                                       std::string_view content,
                                       const Matcher &matcher) {
  const LinkerOptions &options = matcher.options();
  std::vector<Candidate> candidates;
  for (const Matcher::Match &match : matcher.FindAll(content)) {
    std::string_view surface =
        content.substr(match.span.start, match.span.length());
    if (CodePointLength(surface) < static_cast<size_t>(options.min_length)) {
      continue;
    }
    const Matcher::Pattern &p = matcher.pattern(match.pattern);
    size_t plen = CodePointLength(p.normalized);
    for (const Matcher::Target &t : p.targets) {
      candidates.push_back(
          {match.span, t.entry, plen, t.short_homonym, t.abbreviation});
    }
  }

  if (options.homonym_rule) {
    std::unordered_map<uint32_t, size_t> longest;
    for (const Candidate &c : candidates) {
      size_t &l = longest[c.entry];
      l = std::max(l, c.pattern_length);
    }
    std::erase_if(candidates, [&](const Candidate &c) {
      return c.short_homonym && longest[c.entry] <= c.pattern_length;
    });
  }

  if (options.abbreviation_rule &&
      std::any_of(candidates.begin(), candidates.end(),
                  [](const Candidate &c) { return c.abbreviation; })) {
    std::vector<AbbreviationPair> pairs = DetectAbbreviations(content);
    std::vector<std::string> defined;
    for (const AbbreviationPair &p : pairs) {
      defined.push_back(NormalizeForMatch(p.abbreviation, options.case_sensitive));
    }
    std::vector<Candidate> kept;
    for (const Candidate &c : candidates) {
      if (!c.abbreviation) {
        kept.push_back(c);
        continue;
      }
      std::string surface = NormalizeForMatch(
          content.substr(c.span.start, c.span.length()), options.case_sensitive);
      bool licensed = false;
      for (size_t i = 0; i < pairs.size() && !licensed; ++i) {
        if (defined[i] != surface) continue;
        for (const Candidate &o : candidates) {
          if (!o.abbreviation && o.entry == c.entry &&
              pairs[i].long_span.Contains(o.span)) {
            licensed = true;
            break;
          }
        }
      }
      if (licensed) kept.push_back(c);
    }
    candidates = std::move(kept);
  }

  // Overlap resolution per entity type over distinct spans.
  const auto &entities = matcher.entities();
  struct SpanGroup {
    TextSpan span;
    std::string min_id;
    std::vector<uint32_t> entries;
  };
  std::map<std::string, std::map<TextSpan, SpanGroup>> by_type;
  for (const Candidate &c : candidates) {
    const Matcher::Entity &e = entities[c.entry];
    SpanGroup &g = by_type[e.type][c.span];
    if (g.entries.empty() || e.id < g.min_id) g.min_id = e.id;
    g.span = c.span;
    g.entries.push_back(c.entry);
  }

  std::vector<EntityMention> mentions;
  for (auto &[type, groups] : by_type) {
    std::vector<SpanGroup *> order;
    for (auto &[span, g] : groups) order.push_back(&g);
    std::sort(order.begin(), order.end(), [](SpanGroup *a, SpanGroup *b) {
      if (a->span.length() != b->span.length()) {
        return a->span.length() > b->span.length();
      }
      if (a->span.start != b->span.start) return a->span.start < b->span.start;
      return a->min_id < b->min_id;
    });
    std::vector<TextSpan> accepted;
    for (SpanGroup *g : order) {
      bool clash = std::any_of(accepted.begin(), accepted.end(),
                               [&](const TextSpan &s) {
                                 return s.Overlaps(g->span);
                               });
      if (clash) continue;
      accepted.push_back(g->span);
      std::set<std::string> seen;
      for (uint32_t entry : g->entries) {
        const Matcher::Entity &e = entities[entry];
        if (!seen.insert(e.id).second) continue;
        mentions.push_back(EntityMention{
            std::string(doc_id), g->span,
            std::string(content.substr(g->span.start, g->span.length())),
            e.id, e.type, MentionOrigin::kDictionary});
      }
    }
  }
  std::sort(mentions.begin(), mentions.end());
  return mentions;
}

std::vector<EntityMention> LinkDocument(const Document &doc,
                                        const Matcher &matcher) {
  return LinkContent(doc.id, doc.Content(), matcher);
}

std::vector<MentionFrequency> MentionFrequencyReport(
    const std::vector<EntityMention> &mentions, size_t top_k) {
  std::map<std::pair<std::string, std::string>, int64_t> counts;
  for (const EntityMention &m : mentions) ++counts[{m.surface, m.entity_id}];
  std::vector<MentionFrequency> report;
  report.reserve(counts.size());
  for (const auto &[key, count] : counts) {
    report.push_back({key.first, key.second, count});
  }
  std::sort(report.begin(), report.end(),
            [](const MentionFrequency &a, const MentionFrequency &b) {
              if (a.count != b.count) return a.count > b.count;
              return std::tie(a.surface, a.entity_id) <
                     std::tie(b.surface, b.entity_id);
            });
  if (report.size() > top_k) report.resize(top_k);
  return report;
}

std::string FormatMentionFrequencies(
    const std::vector<MentionFrequency> &report) {
  std::string out = "surface\tentity_id\tcount\n";
  for (const MentionFrequency &f : report) {
    out += EscapeField(f.surface) + "\t" + EscapeField(f.entity_id) + "\t" +
           std::to_string(f.count) + "\n";
  }
  return out;
}

}  // namespace kgx
