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

#include "kgx/pathie.h"

#include <algorithm>
#include <map>

#include "kgx/text.h"

namespace kgx {

KeywordSet::KeywordSet(const std::vector<std::string> &phrases) {
  for (const std::string &p : phrases) {
    std::vector<std::string> lemmas = SplitWhitespace(CaseFold(p));
    if (!lemmas.empty()) phrases_.insert(std::move(lemmas));
  }
}

KeywordSet LoadKeywords(const std::filesystem::path &path) {
  std::vector<std::string> phrases;
  for (const std::string &line : SplitLines(ReadFile(path))) {
    std::string_view t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    phrases.emplace_back(t);
  }
  return KeywordSet(phrases);
}

namespace {

std::vector<int> Depths(const SentenceParse &parse) {
  const int n = parse.size();
  std::vector<int> depth(n + 1, -1);
  depth[0] = 0;
  for (int i = 1; i <= n; ++i) {
    std::vector<int> chain;
    int cur = i;
    while (depth[cur] < 0) {
      chain.push_back(cur);
      cur = parse.token(cur).head;
    }
    int d = depth[cur];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
  }
  return depth;
}

bool IsNegation(std::string_view lemma) {
  std::string l = CaseFold(lemma);
  return l == "not" || l == "n't" || l == "never" || l == "no";
}

}  // namespace

int AnchorToken(const EntityMention &mention, const SentenceParse &parse) {
  std::vector<int> depth = Depths(parse);
  int best = -1;
  for (const Token &t : parse.tokens) {
    if (!t.span.Overlaps(mention.span)) continue;
    if (best < 0 || depth[t.index] < depth[best]) best = t.index;
  }
  if (best < 0) {
    throw Error("mention '" + mention.surface + "' at " +
                std::to_string(mention.span.start) +
                " does not overlap sentence " +
                std::to_string(parse.sentence_index) + " of " + parse.doc_id);
  }
  return best;
}

std::vector<int> TreePath(const SentenceParse &parse, int a, int b) {
  std::vector<int> up_a = {a};
  for (int cur = a; parse.token(cur).head != 0;) {
    cur = parse.token(cur).head;
    up_a.push_back(cur);
  }
  std::vector<int> up_b = {b};
  for (int cur = b; parse.token(cur).head != 0;) {
    cur = parse.token(cur).head;
    up_b.push_back(cur);
  }
  // Strip the shared suffix above the lowest common ancestor.
  size_t i = up_a.size();
  size_t j = up_b.size();
  while (i > 1 && j > 1 && up_a[i - 2] == up_b[j - 2]) {
    --i;
    --j;
  }
  std::vector<int> path(up_a.begin(), up_a.begin() + i);
  for (size_t k = j - 1; k-- > 0;) path.push_back(up_b[k]);
  return path;
}

std::vector<EntityMention> MentionsInSentence(
    const SentenceParse &parse,
    const std::vector<EntityMention> &doc_mentions) {
  std::vector<EntityMention> out;
  for (const EntityMention &m : doc_mentions) {
    if (m.doc_id != parse.doc_id) continue;
    bool overlaps = std::any_of(
        parse.tokens.begin(), parse.tokens.end(),
        [&](const Token &t) { return t.span.Overlaps(m.span); });
    if (overlaps) out.push_back(m);
  }
  return out;
}

namespace {

struct Trigger {
  TriggerKind kind;
  int token;                 // first token of the occurrence
  std::vector<int> members;  // all tokens of the occurrence
  std::string lemma;
};

struct SentenceTriggers {
  std::vector<Trigger> keywords;
  std::vector<bool> verb;  // by token index
  std::vector<std::vector<int>> children;
};

SentenceTriggers Prepare(const SentenceParse &parse, const KeywordSet &kw) {
  const int n = parse.size();
  SentenceTriggers st;
  st.verb.assign(n + 1, false);
  st.children.resize(n + 1);
  std::vector<std::string> lemmas(n + 1);
  for (const Token &t : parse.tokens) {
    lemmas[t.index] = CaseFold(t.lemma);
    st.children[t.head].push_back(t.index);
    st.verb[t.index] = t.upos == "VERB" && lemmas[t.index] != "be" &&
                       lemmas[t.index] != "have";
  }
  for (const std::vector<std::string> &phrase : kw.phrases()) {
    const int len = static_cast<int>(phrase.size());
    for (int s = 1; s + len - 1 <= n; ++s) {
      bool match = true;
      for (int k = 0; k < len && match; ++k) match = lemmas[s + k] == phrase[k];
      if (!match) continue;
      Trigger t{TriggerKind::kKeyword, s, {}, Join(phrase, " ")};
      for (int k = 0; k < len; ++k) t.members.push_back(s + k);
      st.keywords.push_back(std::move(t));
    }
  }
  return st;
}

bool Negated(const SentenceParse &parse, const SentenceTriggers &st,
             const std::vector<int> &members) {
  for (int m : members) {
    for (int c : st.children[m]) {
      if (IsNegation(parse.token(c).lemma)) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<RawStatement> ExtractPathIE(
    const SentenceParse &parse, const std::vector<EntityMention> &mentions,
    const KeywordSet &keywords, const PathIEOptions &options) {
  std::vector<RawStatement> out;
  // Identical (span, entity) pairs from different origins count once.
  std::vector<EntityMention> unique;
  for (const EntityMention &m : mentions) {
    bool dup = std::any_of(unique.begin(), unique.end(), [&](const auto &u) {
      return u.span == m.span && u.entity_id == m.entity_id &&
             u.entity_type == m.entity_type;
    });
    if (!dup) unique.push_back(m);
  }
  if (unique.size() < 2) return out;

  SentenceTriggers st = Prepare(parse, keywords);
  std::vector<int> anchors;
  anchors.reserve(unique.size());
  for (const EntityMention &m : unique) anchors.push_back(AnchorToken(m, parse));

  auto inside_mention = [&](int token, const EntityMention &a,
                            const EntityMention &b) {
    const TextSpan &s = parse.token(token).span;
    return s.Overlaps(a.span) || s.Overlaps(b.span);
  };

  for (size_t i = 0; i < unique.size(); ++i) {
    for (size_t j = 0; j < unique.size(); ++j) {
      if (i == j || unique[i].span == unique[j].span) continue;
      std::vector<int> path = TreePath(parse, anchors[i], anchors[j]);
      std::vector<bool> interior(parse.size() + 1, false);
      for (size_t k = 1; k + 1 < path.size(); ++k) {
        if (!inside_mention(path[k], unique[i], unique[j])) {
          interior[path[k]] = true;
        }
      }

      std::vector<Trigger> triggers;
      std::vector<bool> claimed(parse.size() + 1, false);
      for (const Trigger &kw : st.keywords) {
        bool on_path = false;
        bool overlaps_mention = false;
        for (int m : kw.members) {
          on_path = on_path || interior[m];
          overlaps_mention =
              overlaps_mention || inside_mention(m, unique[i], unique[j]);
        }
        if (!on_path || overlaps_mention) continue;
        for (int m : kw.members) claimed[m] = true;
        triggers.push_back(kw);
      }
      for (size_t k = 1; k + 1 < path.size(); ++k) {
        int t = path[k];
        if (!interior[t] || !st.verb[t] || claimed[t]) continue;
        triggers.push_back(
            Trigger{TriggerKind::kVerb, t, {t}, CaseFold(parse.token(t).lemma)});
      }

      for (const Trigger &t : triggers) {
        bool negated = Negated(parse, st, t.members);
        if (negated && !options.keep_negations) continue;
        std::vector<std::string> surfaces;
        for (int m : t.members) surfaces.push_back(parse.token(m).surface);
        RawStatement s;
        s.doc_id = parse.doc_id;
        s.sentence_index = parse.sentence_index;
        s.subject = Argument::FromMention(unique[i]);
        s.object = Argument::FromMention(unique[j]);
        s.predicate_surface = Join(surfaces, " ");
        s.predicate_lemma = t.lemma;
        if (negated) {
          s.predicate_surface = "not " + s.predicate_surface;
          s.predicate_lemma = "not " + s.predicate_lemma;
        }
        s.trigger = t.kind;
        s.trigger_token = t.token;
        s.extractor = Extractor::kPathIE;
        s.sentence = parse.text;
        out.push_back(std::move(s));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RawStatement> FilterStatementsByType(
    const std::vector<RawStatement> &statements,
    const RelationVocabulary &relations, const TypeConstraintSet &constraints) {
  std::vector<RawStatement> out;
  for (const RawStatement &s : statements) {
    std::optional<std::string> relation = relations.Lookup(s.predicate_lemma);
    const TypeConstraint *c =
        relation ? constraints.Find(*relation) : nullptr;
    if (c == nullptr ||
        c->Allows(s.subject.entity_type, s.object.entity_type)) {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace kgx
