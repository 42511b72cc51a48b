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

// Cleaning of externally produced OpenIE triples: predicate normalization and
// the entity filters that decide which noun phrases survive.

#ifndef KGX_OPENIE_H_
#define KGX_OPENIE_H_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgx/corpus.h"

namespace kgx {

struct OpenIETriple {
  std::string doc_id;
  std::string sentence;
  std::string subject;
  std::string predicate;
  std::string object;
  std::optional<double> confidence;

  bool operator==(const OpenIETriple &) const = default;
};

struct OpenIELoadResult {
  std::vector<OpenIETriple> triples;
  // Triples whose phrases do not occur in their sentence.
  std::vector<std::string> warnings;
};

// Columns: doc_id, sentence, subject, predicate, object[, confidence]. A
// header row starting with "doc_id" is skipped.
OpenIELoadResult ParseOpenIETsv(std::string_view content,
                                std::string_view source);
OpenIELoadResult LoadOpenIETsv(const std::filesystem::path &path);
std::string FormatOpenIETsv(const std::vector<OpenIETriple> &triples);

// Word lists used by the predicate normalizer. Defaults are built in; each
// may be replaced from a one-term-per-line resource file.
struct PredicateLexicon {
  std::set<std::string> stopwords;
  std::set<std::string> adverbs;
  // Words ending in "ly" that are not adverbs (apply, rely, ...).
  std::set<std::string> ly_words;

  static const PredicateLexicon &Default();
};

// Replaces the default stop word and adverb lists with the terms of the given
// files (one per line, '#' comments). Empty paths keep the default list.
PredicateLexicon LoadPredicateLexicon(const std::filesystem::path &stopwords,
                                      const std::filesystem::path &adverbs);

// Reduces a predicate phrase to its content verbs: case folding, removal of
// stop words, adverbs and forms of be/have, then lemmatization through an
// exception table and suffix rules. With keep_negations, negation words stay
// in place as "not".
std::string NormalizePredicate(std::string_view phrase, bool keep_negations,
                               const PredicateLexicon &lexicon =
                                   PredicateLexicon::Default());

// Lemma of a single lower-case word.
std::string LemmatizeWord(const std::string &word);

enum class FilterMode { kNone, kPartial, kExact, kSubject };
std::string_view FilterModeName(FilterMode mode);
bool ParseFilterMode(std::string_view s, FilterMode *out);

struct EntityFilterOptions {
  bool keep_negations = false;
  // Lexicon for predicate normalization; the default lexicon when null.
  const PredicateLexicon *lexicon = nullptr;
};

// Turns triples into statements under the given filter. Statement `source` is
// the index of the triple in the input. Mentions are matched to phrases by
// string within the same document:
//   none     phrases kept verbatim
//   exact    both phrases equal a mention surface once case, whitespace and a
//            leading article are ignored; one statement per entity pair
//   partial  both phrases contain at least one mention surface at word
//            boundaries; one statement per contained entity pair
//   subject  the subject passes the exact test; the object stays verbatim
std::vector<RawStatement> ApplyEntityFilter(
    const std::vector<OpenIETriple> &triples,
    const std::vector<EntityMention> &mentions, FilterMode mode,
    const EntityFilterOptions &options = {});

// Sentences overlapping at least two mentions, as (doc_id, sentence_index).
std::set<std::pair<std::string, int>> RestrictToEntitySentences(
    const std::vector<SentenceParse> &parses,
    const std::vector<EntityMention> &mentions);

// Keeps triples whose sentence text matches one of the selected sentences.
std::vector<OpenIETriple> SelectTriplesInSentences(
    const std::vector<OpenIETriple> &triples,
    const std::vector<SentenceParse> &parses,
    const std::set<std::pair<std::string, int>> &selected);

// Fills sentence_index of statements whose sentence text matches a parse.
void AssignSentenceIndices(const std::vector<SentenceParse> &parses,
                           std::vector<RawStatement> *statements);

}  // namespace kgx

#endif  // KGX_OPENIE_H_
