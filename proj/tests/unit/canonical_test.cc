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

#include "kgx/canonical.h"

#include <gtest/gtest.h>

#include <cmath>

#include "kgx/text.h"
#include "test_support.h"

namespace kgx {
namespace {

using testing::MiniCorpusDir;

RawStatement WithLemma(const std::string &lemma, const std::string &subj_type,
                       const std::string &obj_type) {
  RawStatement s;
  s.doc_id = "d";
  s.sentence_index = 0;
  s.subject = {std::nullopt, "s", "S1", subj_type};
  s.object = {std::nullopt, "o", "O1", obj_type};
  s.predicate_surface = lemma;
  s.predicate_lemma = lemma;
  s.extractor = Extractor::kOpenIE;
  s.sentence = "A sentence about " + lemma + ".";
  return s;
}

TEST(EmbeddingTest, TenThousandVectorsSpotChecked) {
  testing::Rng rng(8);
  std::uniform_real_distribution<double> dist(-1, 1);
  const int count = 10000;
  const int dim = 16;
  std::vector<std::vector<double>> vectors(count, std::vector<double>(dim));
  std::string text = std::to_string(count) + " " + std::to_string(dim) + "\n";
  for (int i = 0; i < count; ++i) {
    text += "w" + std::to_string(i);
    for (double &x : vectors[i]) {
      x = dist(rng);
      text += " " + FormatDouble(x);
    }
    text += "\n";
  }
  EmbeddingModel model = ParseEmbeddings(text, "mem");
  EXPECT_EQ(model.size(), static_cast<size_t>(count));
  EXPECT_EQ(model.dimension(), dim);
  for (int i : {0, 1, 4999, 9999}) {
    const std::vector<double> *v = model.Find("w" + std::to_string(i));
    ASSERT_NE(v, nullptr);
    EXPECT_EQ(*v, vectors[i]);
  }
  EXPECT_EQ(model.Find("w10000"), nullptr);
}

TEST(EmbeddingTest, MalformedFiles) {
  EXPECT_THROW(ParseEmbeddings("", "m"), Error);
  EXPECT_THROW(ParseEmbeddings("1 2\na 1\n", "m"), Error);
  EXPECT_THROW(ParseEmbeddings("2 2\na 1 2\n", "m"), Error);
  EXPECT_THROW(ParseEmbeddings("1 2\na 1 x\n", "m"), Error);
  EXPECT_THROW(ParseEmbeddings("1 0\n", "m"), Error);
}

TEST(EmbeddingTest, PhraseVectorIsMeanOfKnownTokens) {
  EmbeddingModel m = ParseEmbeddings("2 2\na 1 0\nb 0 3\n", "m");
  EXPECT_EQ(*PhraseVector(m, "A b zzz"), (std::vector<double>{0.5, 1.5}));
  EXPECT_FALSE(PhraseVector(m, "zzz").has_value());
  EXPECT_NEAR(CosineSimilarity({1, 0}, {1, 1}), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(CosineSimilarity({0, 0}, {1, 1}), 0);
}

TEST(CanonicalizeTest, ExactSynonymBeatsCloserEmbedding) {
  RelationVocabulary rel = testing::SyntheticRelations();
  EmbeddingModel model = testing::SyntheticEmbeddings();
  // "suppress" is also the embedding twin of "bind".
  auto nearest = testing::ExhaustiveNearest(rel, model, "suppress");
  ASSERT_TRUE(nearest.has_value());
  EXPECT_EQ(nearest->relation, "binds");

  CanonicalizationParams p;
  p.min_phrase_frequency = 1;
  auto out = Canonicalize({WithLemma("suppress", "A", "B")}, rel, model, p);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].relation, "inhibits");
  EXPECT_EQ(out[0].mapping, MappingKind::kExactSynonym);
  EXPECT_FALSE(out[0].similarity.has_value());
}

TEST(CanonicalizeTest, ThresholdAndFrequencyGate) {
  RelationVocabulary rel = testing::SyntheticRelations();
  EmbeddingModel model = testing::SyntheticEmbeddings();
  std::vector<RawStatement> stmts = {WithLemma("heal", "A", "B")};
  auto nearest = testing::ExhaustiveNearest(rel, model, "heal");
  ASSERT_TRUE(nearest.has_value());

  CanonicalizationParams p;
  p.min_phrase_frequency = 1;
  p.min_similarity = nearest->similarity;
  auto out = Canonicalize(stmts, rel, model, p);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].relation, nearest->relation);
  EXPECT_EQ(out[0].mapping, MappingKind::kEmbedding);
  EXPECT_DOUBLE_EQ(*out[0].similarity, nearest->similarity);

  p.min_similarity = std::nextafter(nearest->similarity, 2.0);
  EXPECT_TRUE(Canonicalize(stmts, rel, model, p).empty());

  p.min_similarity = 0.4;
  p.min_phrase_frequency = 2;
  EXPECT_TRUE(Canonicalize(stmts, rel, model, p).empty());
  stmts.push_back(stmts[0]);
  EXPECT_EQ(Canonicalize(stmts, rel, model, p).size(), 2u);

  p.min_phrase_frequency = 5;
  p.keep_unmapped = true;
  auto kept = Canonicalize(stmts, rel, model, p);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].mapping, MappingKind::kUnmapped);
  EXPECT_TRUE(kept[0].relation.empty());
}

TEST(CanonicalizeTest, MiniCorpusEmbeddingMappings) {
  RelationVocabulary rel = LoadRelationVocab(MiniCorpusDir() / "relations.tsv");
  EmbeddingModel model = LoadEmbeddings(MiniCorpusDir() / "embeddings.txt");
  CanonicalizationParams p;
  p.min_phrase_frequency = 1;
  auto out = Canonicalize({WithLemma("reduce", "Drug", "Disease"),
                           WithLemma("cure", "Drug", "Disease")},
                          rel, model, p);
  ASSERT_EQ(out.size(), 2u);
  for (const CanonicalStatement &c : out) {
    auto nearest =
        testing::ExhaustiveNearest(rel, model, c.statement.predicate_lemma);
    ASSERT_TRUE(nearest.has_value());
    EXPECT_EQ(c.relation, nearest->relation);
    EXPECT_NEAR(*c.similarity, nearest->similarity, 1e-12);
  }
}

TEST(ConstraintTest, RelationTypeConstraints) {
  TypeConstraintSet types = ParseTypeConstraints("treats\tDrug\tDisease\n", "m");
  CanonicalStatement ok{WithLemma("treat", "Drug", "Disease"), "treats",
                        MappingKind::kExactSynonym, std::nullopt};
  CanonicalStatement bad = ok;
  bad.statement.object.entity_type = "Gene";
  CanonicalStatement unmapped = bad;
  unmapped.relation.clear();
  unmapped.mapping = MappingKind::kUnmapped;
  EXPECT_EQ(ApplyRelationTypeConstraints({ok, bad, unmapped}, types),
            (std::vector<CanonicalStatement>{ok, unmapped}));
}

TEST(StatisticsTest, CountsAndThreeDistinctSamples) {
  std::vector<RawStatement> stmts;
  for (int i = 0; i < 4; ++i) {
    RawStatement s = WithLemma("treat", "A", "B");
    s.sentence = "S" + std::to_string(i % 4);
    stmts.push_back(s);
  }
  stmts.push_back(WithLemma("bind", "A", "B"));
  stmts.push_back(WithLemma("", "A", "B"));
  auto stats = ExportPredicateStatistics(stmts);
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_EQ(stats[0], (PredicateStatistic{"treat", 4, {"S0", "S1", "S2"}}));
  EXPECT_EQ(stats[1].predicate, "bind");
  EXPECT_EQ(FormatPredicateStatistics({stats[1]}),
            "predicate\tcount\tsample_1\tsample_2\tsample_3\n"
            "bind\t1\tA sentence about bind.\t\t\n");
}

TEST(CanonicalTsvTest, RoundTripAndErrors) {
  testing::Rng rng(4);
  auto stmts = testing::RandomCanonical(rng);
  EXPECT_EQ(ParseCanonicalStatements(FormatCanonicalStatements(stmts), "m"),
            stmts);
  std::string text = FormatCanonicalStatements(stmts);
  EXPECT_THROW(ParseCanonicalStatements(text + "x\ty\n", "m"), Error);
}

}  // namespace
}  // namespace kgx
