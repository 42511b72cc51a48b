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

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "kgx/text.h"

namespace kgx {

void EmbeddingModel::Add(std::string_view token, std::vector<double> vector) {
  if (static_cast<int>(vector.size()) != dimension_) {
    throw Error("vector for '" + std::string(token) + "' has " +
                std::to_string(vector.size()) + " components, expected " +
                std::to_string(dimension_));
  }
  vectors_.emplace(CaseFold(token), std::move(vector));
}

const std::vector<double> *EmbeddingModel::Find(std::string_view token) const {
  auto it = vectors_.find(std::string(token));
  return it == vectors_.end() ? nullptr : &it->second;
}

EmbeddingModel EmbeddingModel::Scaled(double factor) const {
  EmbeddingModel out(dimension_);
  for (const auto &[token, v] : vectors_) {
    std::vector<double> scaled = v;
    for (double &x : scaled) x *= factor;
    out.vectors_.emplace(token, std::move(scaled));
  }
  return out;
}

EmbeddingModel ParseEmbeddings(std::string_view content,
                               std::string_view source) {
  std::vector<std::string> lines = SplitLines(content);
  auto where = [&](size_t i) {
    return std::string(source) + ":" + std::to_string(i + 1);
  };
  if (lines.empty()) throw Error(std::string(source) + ": missing header");
  std::vector<std::string> header = SplitWhitespace(lines[0]);
  int64_t count = 0;
  int64_t dimension = 0;
  if (header.size() != 2 || !ParseInt64(header[0], &count) ||
      !ParseInt64(header[1], &dimension) || count < 0 || dimension <= 0) {
    throw Error(where(0) + ": expected header 'count dimension'");
  }
  EmbeddingModel model(static_cast<int>(dimension));
  int64_t seen = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> f = SplitWhitespace(lines[i]);
    if (f.empty()) continue;
    if (static_cast<int64_t>(f.size()) != dimension + 1) {
      throw Error(where(i) + ": expected " + std::to_string(dimension) +
                  " components, found " + std::to_string(f.size() - 1));
    }
    std::vector<double> v(dimension);
    for (int64_t k = 0; k < dimension; ++k) {
      if (!ParseDouble(f[k + 1], &v[k])) {
        throw Error(where(i) + ": invalid component '" + f[k + 1] + "'");
      }
    }
    model.Add(f[0], std::move(v));
    ++seen;
  }
  if (seen != count) {
    throw Error(std::string(source) + ": header announces " +
                std::to_string(count) + " vectors, found " +
                std::to_string(seen));
  }
  return model;
}

EmbeddingModel LoadEmbeddings(const std::filesystem::path &path) {
  return ParseEmbeddings(ReadFile(path), path.string());
}

std::optional<std::vector<double>> PhraseVector(const EmbeddingModel &model,
                                                std::string_view phrase) {
  std::vector<double> sum(model.dimension(), 0.0);
  int known = 0;
  for (const std::string &token : SplitWhitespace(CaseFold(phrase))) {
    const std::vector<double> *v = model.Find(token);
    if (v == nullptr) continue;
    for (int k = 0; k < model.dimension(); ++k) sum[k] += (*v)[k];
    ++known;
  }
  if (known == 0) return std::nullopt;
  for (double &x : sum) x /= known;
  return sum;
}

double CosineSimilarity(const std::vector<double> &a,
                        const std::vector<double> &b) {
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (size_t k = 0; k < a.size() && k < b.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0 || nb == 0) return 0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::string_view MappingName(MappingKind kind) {
  switch (kind) {
    case MappingKind::kExactSynonym:
      return "exact_synonym";
    case MappingKind::kEmbedding:
      return "embedding";
    case MappingKind::kUnmapped:
      return "unmapped";
  }
  return "unmapped";
}

bool ParseMapping(std::string_view s, MappingKind *out) {
  for (MappingKind k : {MappingKind::kExactSynonym, MappingKind::kEmbedding,
                        MappingKind::kUnmapped}) {
    if (s == MappingName(k)) {
      *out = k;
      return true;
    }
  }
  return false;
}

SynonymIndex::SynonymIndex(const RelationVocabulary &relations,
                           const EmbeddingModel &model) {
  // synonyms() is ordered by synonym, so entries are deterministic.
  for (const auto &[synonym, relation] : relations.synonyms()) {
    std::optional<std::vector<double>> v = PhraseVector(model, synonym);
    if (v) entries_.push_back(Entry{relation, synonym, std::move(*v)});
  }
}

std::optional<SynonymIndex::Result> SynonymIndex::Nearest(
    const std::vector<double> &vector) const {
  std::optional<Result> best;
  for (const Entry &e : entries_) {
    double sim = CosineSimilarity(vector, e.vector);
    bool better = !best || sim > best->similarity + kSimilarityTieTolerance;
    if (!better && best &&
        std::abs(sim - best->similarity) <= kSimilarityTieTolerance) {
      better = std::tie(e.relation, e.synonym) <
               std::tie(best->relation, best->synonym);
    }
    if (better) best = Result{e.relation, e.synonym, sim};
  }
  return best;
}

std::map<std::string, int64_t> PredicateFrequencies(
    const std::vector<RawStatement> &statements) {
  std::map<std::string, int64_t> freq;
  for (const RawStatement &s : statements) ++freq[s.predicate_lemma];
  return freq;
}

std::vector<CanonicalStatement> Canonicalize(
    const std::vector<RawStatement> &statements,
    const RelationVocabulary &relations, const EmbeddingModel &model,
    const CanonicalizationParams &params) {
  const std::map<std::string, int64_t> freq = PredicateFrequencies(statements);
  const SynonymIndex index(relations, model);

  // Mapping depends only on the lemma; resolve each lemma once.
  std::map<std::string, CanonicalStatement> by_lemma;
  for (const auto &[lemma, count] : freq) {
    CanonicalStatement c;
    if (std::optional<std::string> r = relations.Lookup(lemma); r) {
      c.relation = *r;
      c.mapping = MappingKind::kExactSynonym;
    } else if (!NormalizePhrase(lemma).empty() &&
               count >= params.min_phrase_frequency) {
      std::optional<std::vector<double>> v = PhraseVector(model, lemma);
      std::optional<SynonymIndex::Result> best =
          v ? index.Nearest(*v) : std::nullopt;
      if (best && best->similarity >= params.min_similarity) {
        c.relation = best->relation;
        c.mapping = MappingKind::kEmbedding;
        c.similarity = best->similarity;
      }
    }
    by_lemma.emplace(lemma, std::move(c));
  }

  std::vector<CanonicalStatement> out;
  for (const RawStatement &s : statements) {
    const CanonicalStatement &m = by_lemma.at(s.predicate_lemma);
    if (m.mapping == MappingKind::kUnmapped && !params.keep_unmapped) continue;
    CanonicalStatement c = m;
    c.statement = s;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CanonicalStatement> ApplyRelationTypeConstraints(
    const std::vector<CanonicalStatement> &statements,
    const TypeConstraintSet &constraints) {
  std::vector<CanonicalStatement> out;
  for (const CanonicalStatement &c : statements) {
    const TypeConstraint *tc =
        c.relation.empty() ? nullptr : constraints.Find(c.relation);
    if (tc == nullptr || tc->Allows(c.statement.subject.entity_type,
                                    c.statement.object.entity_type)) {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<PredicateStatistic> ExportPredicateStatistics(
    const std::vector<RawStatement> &statements) {
  std::map<std::string, std::pair<int64_t, std::set<std::string>>> acc;
  for (const RawStatement &s : statements) {
    if (s.predicate_lemma.empty()) continue;
    auto &entry = acc[s.predicate_lemma];
    ++entry.first;
    entry.second.insert(s.sentence);
  }
  std::vector<PredicateStatistic> out;
  for (auto &[lemma, entry] : acc) {
    PredicateStatistic p{lemma, entry.first, {}};
    for (const std::string &sentence : entry.second) {
      if (p.samples.size() == 3) break;
      p.samples.push_back(sentence);
    }
    out.push_back(std::move(p));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return a.count > b.count;
  });
  return out;
}

std::string FormatPredicateStatistics(
    const std::vector<PredicateStatistic> &stats) {
  std::string out = "predicate\tcount\tsample_1\tsample_2\tsample_3\n";
  for (const PredicateStatistic &p : stats) {
    out += EscapeField(p.predicate) + '\t' + std::to_string(p.count);
    for (size_t k = 0; k < 3; ++k) {
      out += '\t';
      if (k < p.samples.size()) out += EscapeField(p.samples[k]);
    }
    out += '\n';
  }
  return out;
}

std::vector<CanonicalStatement> ParseCanonicalStatements(
    std::string_view content, std::string_view source) {
  std::vector<CanonicalStatement> out;
  std::vector<std::string> lines = SplitLines(content);
  const size_t columns = StatementColumns().size() + 3;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i == 0 && lines[i].rfind("doc_id\t", 0) == 0) continue;
    if (lines[i].empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(i + 1);
    std::vector<std::string> f = Split(lines[i], '\t');
    if (f.size() != columns) {
      throw Error(where + ": expected " + std::to_string(columns) +
                  " columns, found " + std::to_string(f.size()));
    }
    CanonicalStatement c;
    c.statement = ParseStatementFields(f, 0, where);
    size_t k = StatementColumns().size();
    c.relation = UnescapeField(f[k]);
    if (!ParseMapping(f[k + 1], &c.mapping)) {
      throw Error(where + ": invalid mapping '" + f[k + 1] + "'");
    }
    if (!f[k + 2].empty()) {
      double sim = 0;
      if (!ParseDouble(f[k + 2], &sim)) {
        throw Error(where + ": invalid similarity '" + f[k + 2] + "'");
      }
      c.similarity = sim;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CanonicalStatement> LoadCanonicalStatements(
    const std::filesystem::path &path) {
  return ParseCanonicalStatements(ReadFile(path), path.string());
}

std::string FormatCanonicalStatements(
    std::vector<CanonicalStatement> statements) {
  std::sort(statements.begin(), statements.end());
  std::string out = Join(StatementColumns(), "\t");
  out += "\trelation\tmapping\tsimilarity\n";
  for (const CanonicalStatement &c : statements) {
    AppendStatementFields(c.statement, &out);
    out += '\t' + EscapeField(c.relation) + '\t' +
           std::string(MappingName(c.mapping)) + '\t';
    if (c.similarity) out += FormatDouble(*c.similarity);
    out += '\n';
  }
  return out;
}

void WriteCanonicalStatements(const std::vector<CanonicalStatement> &statements,
                              const std::filesystem::path &path) {
  WriteFile(path, FormatCanonicalStatements(statements));
}

}  // namespace kgx
