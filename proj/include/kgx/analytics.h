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

// Sentence and phrase complexity heuristics and extraction count tables.
//
// A text is complex when it holds a clause splitter (',', ';' or ':' with an
// alphanumeric character somewhere on each side, a comma between two digits
// excepted) or one of the connective
// words. A phrase is complex when it is complex by itself, or when its
// sentence is complex and the phrase either covers more than half of the
// sentence (in code points) or contains one of the prepositions. Word lists
// match whole tokens, case-insensitively.

#ifndef KGX_ANALYTICS_H_
#define KGX_ANALYTICS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgx/canonical.h"
#include "kgx/corpus.h"
#include "kgx/openie.h"

namespace kgx {

class ComplexityClassifier {
 public:
  // Built-in word lists.
  ComplexityClassifier();
  ComplexityClassifier(std::set<std::string> connectives,
                       std::set<std::string> prepositions);

  // Loads either list from a one-word-per-line file; empty paths keep the
  // built-in list.
  static ComplexityClassifier Load(const std::filesystem::path &connectives,
                                   const std::filesystem::path &prepositions);

  bool ClassifySentence(std::string_view sentence) const;
  bool ClassifyPhrase(std::string_view phrase, std::string_view sentence,
                      bool sentence_complex) const;

  const std::set<std::string> &connectives() const { return connectives_; }
  const std::set<std::string> &prepositions() const { return prepositions_; }

 private:
  std::set<std::string> connectives_;
  std::set<std::string> prepositions_;
};

struct ComplexityReport {
  int64_t sentences_total = 0;
  int64_t sentences_complex = 0;
  int64_t subjects_total = 0;
  int64_t subjects_complex = 0;
  int64_t objects_total = 0;
  int64_t objects_complex = 0;

  // complex / total * 100, absent when total is zero.
  static std::optional<double> Percentage(int64_t complex, int64_t total);

  bool operator==(const ComplexityReport &) const = default;
};

// Sentences come from the parses; subjects and objects from the triples,
// each judged against the triple's own sentence.
ComplexityReport BuildComplexityReport(
    const std::vector<OpenIETriple> &triples,
    const std::vector<SentenceParse> &parses,
    const ComplexityClassifier &classifier);

struct FilterCount {
  int64_t statements = 0;
  int64_t source_triples = 0;  // distinct surviving triples

  bool operator==(const FilterCount &) const = default;
};

struct ExtractionStatistics {
  std::map<std::string, FilterCount> openie;  // keyed by filter mode name
  int64_t pathie_statements = 0;
  int64_t canonical_statements = 0;
  int64_t constrained_statements = 0;
  std::map<std::string, int64_t> relations;  // after constraints

  bool operator==(const ExtractionStatistics &) const = default;
};

FilterCount CountFilterResult(const std::vector<RawStatement> &statements);

// Rows of (section, key, value), in display order.
std::vector<std::vector<std::string>> ExtractionRows(
    const ExtractionStatistics &stats);
std::vector<std::vector<std::string>> ComplexityRows(
    const ComplexityReport &report);

// First row is the header.
std::string FormatTsv(const std::vector<std::vector<std::string>> &rows);
// Columns padded to their widest cell; a rule follows the header.
std::string FormatAlignedTable(
    const std::vector<std::vector<std::string>> &rows);

}  // namespace kgx

#endif  // KGX_ANALYTICS_H_
