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

// Dictionary-based entity linking.
//
// A synonym matches the text span [b, e) when the span neither starts nor
// ends inside a run of word characters, its first and last characters are not
// whitespace, and its normalized form (whitespace runs collapsed, ASCII case
// folded unless case-sensitive) equals the normalized synonym.
//
// Candidate matches then pass through, in order:
//   1. Minimum length: the matched surface must have at least min_length
//      characters. Ignored synonyms and synonyms shorter than min_length are
//      never matched.
//   2. Homonym rule: a synonym is flagged short when it is a single token that
//      also occurs as a token of a strictly longer synonym of the same entity
//      ("Einstein" within "Albert Einstein"). Its matches survive only if the
//      same entity matched somewhere in the document through a strictly
//      longer synonym.
//   3. Abbreviation rule: a synonym is abbreviation-like when it is a single
//      token of 2-10 characters with at least two upper-case letters. Its
//      matches survive only if the document defines that abbreviation as
//      "long form (ABBR)" and a non-abbreviation match of the same entity lies
//      within the long form.
//   4. Overlap resolution, separately per entity type: the longest span wins,
//      then the smaller start offset, then the smaller entity id. Identical
//      spans do not compete, so a span linked to k entities yields k mentions.

#ifndef KGX_LINKER_H_
#define KGX_LINKER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgx/corpus.h"
#include "kgx/vocabulary.h"

namespace kgx {

struct LinkerOptions {
  int min_length = 5;
  bool case_sensitive = false;
  bool homonym_rule = true;
  bool abbreviation_rule = true;
};

struct AbbreviationPair {
  TextSpan long_span;
  std::string abbreviation;

  bool operator==(const AbbreviationPair &) const = default;
};

// Finds "long form (ABBR)" definitions. ABBR is a parenthesized token of 2-10
// characters; its letters must occur in order within the at most eight tokens
// preceding the parenthesis, the first letter at the start of a word. The
// window stops at clause punctuation.
std::vector<AbbreviationPair> DetectAbbreviations(std::string_view content);
std::vector<AbbreviationPair> DetectAbbreviations(const Document &doc);

// Normalization applied to both synonyms and text spans.
std::string NormalizeForMatch(std::string_view s, bool case_sensitive);

// True for a single token that also is a token of a strictly longer synonym
// in `synonyms` (all normalized).
bool IsShortHomonym(const std::string &synonym,
                    const std::vector<std::string> &synonyms);

// Single token of 2-10 characters with at least two upper-case letters.
bool IsAbbreviationLike(std::string_view synonym);

class Matcher {
 public:
  struct Target {
    uint32_t entry = 0;  // index into entities()
    bool short_homonym = false;
    bool abbreviation = false;
  };

  struct Pattern {
    std::string normalized;
    std::vector<Target> targets;
  };

  struct Match {
    TextSpan span;
    uint32_t pattern = 0;
  };

  struct Entity {
    std::string id;
    std::string type;
  };

  // Logs nothing; an empty matcher simply matches nothing (see empty()).
  static Matcher Build(const EntityVocabulary &vocab, const IgnoreList &ignore,
                       const LinkerOptions &options);

  // Every boundary-respecting synonym occurrence, including overlapping ones.
  std::vector<Match> FindAll(std::string_view text) const;

  const Pattern &pattern(uint32_t id) const { return patterns_[id]; }
  const std::vector<Pattern> &patterns() const { return patterns_; }
  const std::vector<Entity> &entities() const { return entities_; }
  const LinkerOptions &options() const { return options_; }
  bool empty() const { return patterns_.empty(); }

 private:
  int32_t Child(int32_t node, unsigned char c) const;
  int32_t AddChild(int32_t node, unsigned char c);

  LinkerOptions options_;
  std::vector<Pattern> patterns_;
  std::vector<Entity> entities_;
  // Trie over normalized synonyms; key = node << 8 | byte.
  std::unordered_map<uint64_t, int32_t> edges_;
  std::vector<int32_t> terminal_;  // node -> pattern id or -1
};

std::vector<EntityMention> LinkDocument(const Document &doc,
                                        const Matcher &matcher);

// Same as LinkDocument for a precomputed content string.
std::vector<EntityMention> LinkContent(std::string_view doc_id,
                                       std::string_view content,
                                       const Matcher &matcher);

struct MentionFrequency {
  std::string surface;
  std::string entity_id;
  int64_t count = 0;

  bool operator==(const MentionFrequency &) const = default;
};

// The top_k most frequent (surface, entity_id) pairs, by descending count,
// then surface, then entity id.
std::vector<MentionFrequency> MentionFrequencyReport(
    const std::vector<EntityMention> &mentions, size_t top_k = 500);

std::string FormatMentionFrequencies(
    const std::vector<MentionFrequency> &report);

}  // namespace kgx

#endif  // KGX_LINKER_H_
