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

#include <gtest/gtest.h>

#include "kgx/text.h"
#include "test_support.h"

namespace kgx {
namespace {

using testing::DataDir;
using testing::MiniCorpusDir;

TEST(OpenIETsvTest, HundredTriplesMatchGolden) {
  OpenIELoadResult r = LoadOpenIETsv(DataDir() / "triples100.tsv");
  ASSERT_EQ(r.triples.size(), 100u);
  EXPECT_FALSE(r.triples[0].confidence.has_value());
  EXPECT_EQ(FormatOpenIETsv(r.triples),
            ReadFile(DataDir() / "triples100.golden.tsv"));
}

TEST(OpenIETsvTest, RejectsMalformedRows) {
  EXPECT_THROW(ParseOpenIETsv("d\ts\ta\tb\n", "m"), Error);
  EXPECT_THROW(ParseOpenIETsv("d\ts\ta\t \tc\n", "m"), Error);
  EXPECT_THROW(ParseOpenIETsv("d\ts\ta\tb\tc\t1.5\n", "m"), Error);
  EXPECT_THROW(ParseOpenIETsv("d\ts\ta\tb\tc\tx\n", "m"), Error);
  OpenIELoadResult r = ParseOpenIETsv("d\tA b.\tA\tb\tzzz\t0.5\n", "m");
  EXPECT_EQ(r.triples.size(), 1u);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(PredicateTest, Lemmatizer) {
  EXPECT_EQ(LemmatizeWord("inhibits"), "inhibit");
  EXPECT_EQ(LemmatizeWord("reduces"), "reduce");
  EXPECT_EQ(LemmatizeWord("studies"), "study");
  EXPECT_EQ(LemmatizeWord("stopped"), "stop");
  EXPECT_EQ(LemmatizeWord("maintained"), "maintain");
  EXPECT_EQ(LemmatizeWord("visiting"), "visit");
  EXPECT_EQ(LemmatizeWord("making"), "make");
  EXPECT_EQ(LemmatizeWord("went"), "go");
}

TEST(PredicateTest, NormalizationDropsAuxiliariesAndAdverbs) {
  EXPECT_EQ(NormalizePredicate("was visiting", false), "visit");
  EXPECT_EQ(NormalizePredicate("has maintained", false), "maintain");
  EXPECT_EQ(NormalizePredicate("did not cure", false), "cure");
  EXPECT_EQ(NormalizePredicate("did not cure", true), "not cure");
  EXPECT_EQ(NormalizePredicate("didn't cure", true), "not cure");
  EXPECT_EQ(NormalizePredicate("significantly reduces", false), "reduce");
  EXPECT_EQ(NormalizePredicate("applies to", false), "apply");
  EXPECT_EQ(NormalizePredicate("is", false), "");
}

TEST(PredicateTest, NormalizationIsIdempotent) {
  testing::Rng rng(17);
  for (const OpenIETriple &t : LoadOpenIETsv(DataDir() / "triples100.tsv").triples) {
    std::string once = NormalizePredicate(t.predicate, true);
    EXPECT_EQ(NormalizePredicate(once, true), once) << t.predicate;
  }
  for (int i = 0; i < 300; ++i) {
    std::string phrase = testing::RandomText(rng, 30, false);
    std::string once = NormalizePredicate(phrase, i % 2 == 0);
    EXPECT_EQ(NormalizePredicate(once, i % 2 == 0), once) << phrase;
  }
}

TEST(PredicateTest, LexiconOverride) {
  std::filesystem::path dir = testing::ScratchDir("lexicon");
  WriteFile(dir / "stop.txt", "# custom\nthe\n");
  PredicateLexicon lex = LoadPredicateLexicon(dir / "stop.txt", {});
  EXPECT_EQ(NormalizePredicate("may treat the", false, lex), "may treat");
  EXPECT_EQ(NormalizePredicate("may treat the", false), "treat");
}

// Ten triples over two entities; the expected counts per mode are worked out
// in the comments.
class FilterCountTest : public ::testing::Test {
 protected:
  struct Counts {
    int64_t statements;
    int64_t triples;
  };

  void SetUp() override {
    mentions_ = {{"d", {0, 10}, "Alpha Corp", "A", "Org"},
                 {"d", {20, 24}, "Beta", "B", "Gene"}};
    auto add = [&](const std::string &s, const std::string &o) {
      triples_.push_back({"d", "sentence", s, "acts on", o, std::nullopt});
    };
    add("Alpha Corp", "Beta");                   // exact, partial, subject
    add("the Alpha Corp", "a protein");          // subject
    add("Alpha Corp shares", "Beta levels");     // partial
    add("Gamma", "Beta");                        // none
    add("the Alpha Corp", "Beta and Alpha Corp");  // partial x2, subject
    add("x", "y");
    add("Betamax", "Alpha Corpus");              // no word-boundary match
    add("foo", "Beta");
    add("bar", "baz");
    add("qux", "quux");
  }

  Counts Count(FilterMode mode) {
    auto out = ApplyEntityFilter(triples_, mentions_, mode);
    std::set<int64_t> sources;
    for (const RawStatement &s : out) sources.insert(s.source);
    return {static_cast<int64_t>(out.size()),
            static_cast<int64_t>(sources.size())};
  }

  std::vector<EntityMention> mentions_;
  std::vector<OpenIETriple> triples_;
};

TEST_F(FilterCountTest, HandCountedModes) {
  EXPECT_EQ(Count(FilterMode::kNone).statements, 10);
  EXPECT_EQ(Count(FilterMode::kPartial).statements, 4);
  EXPECT_EQ(Count(FilterMode::kPartial).triples, 3);
  EXPECT_EQ(Count(FilterMode::kExact).statements, 1);
  EXPECT_EQ(Count(FilterMode::kSubject).statements, 3);
}

TEST_F(FilterCountTest, EntityArgumentsCarryIdsAndSurfaces) {
  auto exact = ApplyEntityFilter(triples_, mentions_, FilterMode::kExact);
  ASSERT_EQ(exact.size(), 1u);
  EXPECT_EQ(exact[0].subject.entity_id, "A");
  EXPECT_EQ(exact[0].subject.text, "Alpha Corp");
  EXPECT_FALSE(exact[0].subject.span.has_value());
  EXPECT_EQ(exact[0].predicate_lemma, "act on");
  EXPECT_EQ(exact[0].source, 0);

  auto subject = ApplyEntityFilter(triples_, mentions_, FilterMode::kSubject);
  EXPECT_EQ(subject[1].object.text, "a protein");
  EXPECT_FALSE(subject[1].object.IsEntity());
}

TEST(FilterModeTest, NamesRoundTrip) {
  for (FilterMode m : {FilterMode::kNone, FilterMode::kPartial,
                       FilterMode::kExact, FilterMode::kSubject}) {
    FilterMode back = FilterMode::kNone;
    ASSERT_TRUE(ParseFilterMode(FilterModeName(m), &back));
    EXPECT_EQ(back, m);
  }
  FilterMode out;
  EXPECT_FALSE(ParseFilterMode("fuzzy", &out));
}

TEST(FilterContainmentTest, ExactStatementsWithinPartial) {
  testing::Rng rng(99);
  for (int round = 0; round < 10; ++round) {
    testing::FilterCorpus c = testing::RandomFilterCorpus(rng, 200);
    auto keys = [&](FilterMode mode) {
      std::set<std::tuple<int64_t, std::string, std::string>> out;
      for (const RawStatement &s :
           ApplyEntityFilter(c.triples, c.mentions, mode)) {
        out.emplace(s.source, s.subject.entity_id, s.object.entity_id);
      }
      return out;
    };
    auto exact = keys(FilterMode::kExact);
    auto partial = keys(FilterMode::kPartial);
    EXPECT_TRUE(std::includes(partial.begin(), partial.end(), exact.begin(),
                              exact.end()));
  }
}

TEST(SentenceSelectionTest, GoldenMentionsSelectThirteenSentences) {
  ParseLoadResult parses = LoadParses(MiniCorpusDir() / "parses.conllu");
  auto mentions =
      LoadMentions(MiniCorpusDir() / ".." / "golden" / "link" / "mentions.tsv");
  auto selected = RestrictToEntitySentences(parses.parses, mentions);
  EXPECT_EQ(selected.size(), 13u);
  EXPECT_EQ(selected.count({"d06", 0}), 0u);
  EXPECT_EQ(selected.count({"d02", 0}), 1u);

  auto triples = LoadOpenIETsv(MiniCorpusDir() / "triples.tsv").triples;
  auto kept = SelectTriplesInSentences(triples, parses.parses, selected);
  EXPECT_LE(kept.size(), triples.size());
  for (const OpenIETriple &t : kept) EXPECT_NE(t.doc_id, "d06");
}

TEST(SentenceSelectionTest, AssignsIndicesByNormalizedText) {
  SentenceParse p;
  p.doc_id = "d";
  p.sentence_index = 3;
  p.text = "Aspirin  reduces fever.";
  RawStatement s;
  s.doc_id = "d";
  s.sentence = "aspirin reduces fever.";
  RawStatement other = s;
  other.sentence = "unrelated";
  std::vector<RawStatement> v = {s, other};
  AssignSentenceIndices({p}, &v);
  EXPECT_EQ(v[0].sentence_index, 3);
  EXPECT_EQ(v[1].sentence_index, -1);
}

}  // namespace
}  // namespace kgx
