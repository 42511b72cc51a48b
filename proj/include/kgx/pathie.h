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

// Path-based statement extraction over dependency trees.
//
// For every ordered pair of mentions with distinct spans in a sentence, the
// tree path between their anchor tokens is inspected. Each interior path
// token that is not part of either mention can trigger a statement:
//   - a keyword occurrence (contiguous lemma sequence, case-folded) with at
//     least one member token on the path, or
//   - a VERB whose lemma is not "be" or "have".
// One statement is emitted per trigger, in both orientations.

#ifndef KGX_PATHIE_H_
#define KGX_PATHIE_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgx/corpus.h"
#include "kgx/vocabulary.h"

namespace kgx {

class KeywordSet {
 public:
  KeywordSet() = default;
  explicit KeywordSet(const std::vector<std::string> &phrases);

  // Lemma sequences, case-folded.
  const std::set<std::vector<std::string>> &phrases() const {
    return phrases_;
  }
  bool empty() const { return phrases_.empty(); }

 private:
  std::set<std::vector<std::string>> phrases_;
};

KeywordSet LoadKeywords(const std::filesystem::path &path);

struct PathIEOptions {
  // Negated triggers are kept with a "not " prefix instead of dropped.
  bool keep_negations = false;
};

// Among tokens overlapping the mention span, the one closest to the root;
// ties go to the smaller index. Throws if no token overlaps the span.
int AnchorToken(const EntityMention &mention, const SentenceParse &parse);

// Token indices from a to b through their lowest common ancestor, both
// endpoints included.
std::vector<int> TreePath(const SentenceParse &parse, int a, int b);

// Mentions of the sentence's document that overlap one of its tokens.
std::vector<EntityMention> MentionsInSentence(
    const SentenceParse &parse, const std::vector<EntityMention> &doc_mentions);

std::vector<RawStatement> ExtractPathIE(
    const SentenceParse &parse, const std::vector<EntityMention> &mentions,
    const KeywordSet &keywords, const PathIEOptions &options = {});

// Maps each statement's predicate lemma to a relation through the vocabulary
// and drops statements whose argument types violate that relation's
// constraint. Statements without a constrained relation pass through.
std::vector<RawStatement> FilterStatementsByType(
    const std::vector<RawStatement> &statements,
    const RelationVocabulary &relations, const TypeConstraintSet &constraints);

}  // namespace kgx

#endif  // KGX_PATHIE_H_
