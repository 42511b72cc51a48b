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

// Mapping of predicate lemmas onto named relations.

#ifndef KGX_CANONICAL_H_
#define KGX_CANONICAL_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgx/corpus.h"
#include "kgx/vocabulary.h"

namespace kgx {

// Word vectors in the common text format: a "count dimension" header, then
// one "token v1 ... vd" line per vector. Tokens are case-folded on load; the
// first of several tokens folding to the same key wins.
class EmbeddingModel {
 public:
  explicit EmbeddingModel(int dimension = 0) : dimension_(dimension) {}

  // Throws on a dimension mismatch.
  void Add(std::string_view token, std::vector<double> vector);

  const std::vector<double> *Find(std::string_view token) const;
  int dimension() const { return dimension_; }
  size_t size() const { return vectors_.size(); }

  // Copy with every vector multiplied by `factor`.
  EmbeddingModel Scaled(double factor) const;

 private:
  int dimension_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

EmbeddingModel ParseEmbeddings(std::string_view content,
                               std::string_view source);
EmbeddingModel LoadEmbeddings(const std::filesystem::path &path);

// Mean vector of the in-vocabulary tokens of the case-folded phrase, or
// nullopt when no token is known.
std::optional<std::vector<double>> PhraseVector(const EmbeddingModel &model,
                                                std::string_view phrase);

// Zero when either vector has zero norm.
double CosineSimilarity(const std::vector<double> &a,
                        const std::vector<double> &b);

struct CanonicalizationParams {
  double min_similarity = 0.4;
  int64_t min_phrase_frequency = 2;
  bool keep_unmapped = false;
};

enum class MappingKind { kExactSynonym, kEmbedding, kUnmapped };
std::string_view MappingName(MappingKind kind);
bool ParseMapping(std::string_view s, MappingKind *out);

struct CanonicalStatement {
  RawStatement statement;
  std::string relation;  // empty when unmapped
  MappingKind mapping = MappingKind::kUnmapped;
  std::optional<double> similarity;  // embedding mappings only

  auto operator<=>(const CanonicalStatement &) const = default;
};

// Similarities closer than this count as ties, so that rounding noise does
// not decide between two equally close synonyms.
inline constexpr double kSimilarityTieTolerance = 1e-12;

// Nearest vocabulary synonym by cosine similarity of phrase vectors.
class SynonymIndex {
 public:
  struct Result {
    std::string relation;
    std::string synonym;
    double similarity = 0;
  };

  SynonymIndex(const RelationVocabulary &relations,
               const EmbeddingModel &model);

  // Best match for a phrase vector; ties go to the smaller relation name,
  // then the smaller synonym. nullopt when no synonym has a vector.
  std::optional<Result> Nearest(const std::vector<double> &vector) const;

 private:
  struct Entry {
    std::string relation;
    std::string synonym;
    std::vector<double> vector;
  };
  std::vector<Entry> entries_;
};

// Corpus-level frequency of each predicate lemma.
std::map<std::string, int64_t> PredicateFrequencies(
    const std::vector<RawStatement> &statements);

// 1. a predicate lemma equal to a vocabulary synonym maps to its relation;
// 2. otherwise a lemma occurring at least min_phrase_frequency times in
//    `statements` maps to the relation of the most similar synonym, if that
//    similarity reaches min_similarity;
// 3. otherwise the statement is unmapped and dropped unless keep_unmapped.
std::vector<CanonicalStatement> Canonicalize(
    const std::vector<RawStatement> &statements,
    const RelationVocabulary &relations, const EmbeddingModel &model,
    const CanonicalizationParams &params);

// Keeps statements whose relation is unconstrained or whose argument types
// form an allowed pair.
std::vector<CanonicalStatement> ApplyRelationTypeConstraints(
    const std::vector<CanonicalStatement> &statements,
    const TypeConstraintSet &constraints);

struct PredicateStatistic {
  std::string predicate;
  int64_t count = 0;
  std::vector<std::string> samples;  // up to three distinct sentences

  bool operator==(const PredicateStatistic &) const = default;
};

// Non-empty predicate lemmas by descending count, then lexicographically.
// Samples are the lexicographically smallest distinct sentences.
std::vector<PredicateStatistic> ExportPredicateStatistics(
    const std::vector<RawStatement> &statements);
std::string FormatPredicateStatistics(
    const std::vector<PredicateStatistic> &stats);

// Statement columns followed by relation, mapping and similarity.
std::vector<CanonicalStatement> ParseCanonicalStatements(
    std::string_view content, std::string_view source);
std::vector<CanonicalStatement> LoadCanonicalStatements(
    const std::filesystem::path &path);
std::string FormatCanonicalStatements(
    std::vector<CanonicalStatement> statements);
void WriteCanonicalStatements(const std::vector<CanonicalStatement> &statements,
                              const std::filesystem::path &path);

}  // namespace kgx

#endif  // KGX_CANONICAL_H_
