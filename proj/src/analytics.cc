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

#include "kgx/analytics.h"

#include <algorithm>
#include <cmath>

#include "kgx/text.h"

namespace kgx {

namespace {

std::set<std::string> LoadWordList(const std::filesystem::path &path) {
  std::set<std::string> words;
  for (const std::string &line : SplitLines(ReadFile(path))) {
    std::string_view t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    words.insert(CaseFold(t));
  }
  return words;
}

bool IsAsciiDigit(char c) { return c >= '0' && c <= '9'; }

bool IsAlnum(char c) { return IsWordChar(c) && c != '_'; }

bool HasSplitter(std::string_view text) {
  // Position of the first and last alphanumeric byte.
  size_t first = std::string_view::npos;
  size_t last = std::string_view::npos;
  for (size_t i = 0; i < text.size(); ++i) {
    if (!IsAlnum(text[i])) continue;
    if (first == std::string_view::npos) first = i;
    last = i;
  }
  if (first == std::string_view::npos) return false;
  for (size_t i = first + 1; i < last; ++i) {
    char c = text[i];
    if (c != ',' && c != ';' && c != ':') continue;
    if (c == ',' && IsAsciiDigit(text[i - 1]) && IsAsciiDigit(text[i + 1])) {
      continue;
    }
    return true;
  }
  return false;
}

bool HasWord(std::string_view text, const std::set<std::string> &words) {
  for (const std::string &t : WordTokens(text)) {
    if (words.count(t) > 0) return true;
  }
  return false;
}

}  // namespace

ComplexityClassifier::ComplexityClassifier()
    : ComplexityClassifier({"and", "or", "that", "thus", "hence", "because",
                            "due", "while", "although", "which", "who",
                            "where", "when"},
                           {"by", "at", "for", "with", "from", "into",
                            "during"}) {}

ComplexityClassifier::ComplexityClassifier(std::set<std::string> connectives,
                                           std::set<std::string> prepositions)
    : connectives_(std::move(connectives)),
      prepositions_(std::move(prepositions)) {}

ComplexityClassifier ComplexityClassifier::Load(
    const std::filesystem::path &connectives,
    const std::filesystem::path &prepositions) {
  ComplexityClassifier c;
  if (!connectives.empty()) c.connectives_ = LoadWordList(connectives);
  if (!prepositions.empty()) c.prepositions_ = LoadWordList(prepositions);
  return c;
}

bool ComplexityClassifier::ClassifySentence(std::string_view sentence) const {
  return HasSplitter(sentence) || HasWord(sentence, connectives_);
}

bool ComplexityClassifier::ClassifyPhrase(std::string_view phrase,
                                          std::string_view sentence,
                                          bool sentence_complex) const {
  if (ClassifySentence(phrase)) return true;
  if (!sentence_complex) return false;
  const size_t sentence_length = CodePointLength(sentence);
  if (sentence_length > 0 &&
      2 * CodePointLength(phrase) > sentence_length) {
    return true;
  }
  return HasWord(phrase, prepositions_);
}

std::optional<double> ComplexityReport::Percentage(int64_t complex,
                                                   int64_t total) {
  if (total == 0) return std::nullopt;
  return 100.0 * static_cast<double>(complex) / static_cast<double>(total);
}

ComplexityReport BuildComplexityReport(
    const std::vector<OpenIETriple> &triples,
    const std::vector<SentenceParse> &parses,
    const ComplexityClassifier &classifier) {
  ComplexityReport r;
  for (const SentenceParse &p : parses) {
    ++r.sentences_total;
    if (classifier.ClassifySentence(p.text)) ++r.sentences_complex;
  }
  for (const OpenIETriple &t : triples) {
    bool complex = classifier.ClassifySentence(t.sentence);
    ++r.subjects_total;
    ++r.objects_total;
    if (classifier.ClassifyPhrase(t.subject, t.sentence, complex)) {
      ++r.subjects_complex;
    }
    if (classifier.ClassifyPhrase(t.object, t.sentence, complex)) {
      ++r.objects_complex;
    }
  }
  return r;
}

FilterCount CountFilterResult(const std::vector<RawStatement> &statements) {
  std::set<int64_t> sources;
  for (const RawStatement &s : statements) sources.insert(s.source);
  return FilterCount{static_cast<int64_t>(statements.size()),
                     static_cast<int64_t>(sources.size())};
}

std::vector<std::vector<std::string>> ExtractionRows(
    const ExtractionStatistics &stats) {
  std::vector<std::vector<std::string>> rows = {{"section", "key", "value"}};
  for (const auto &[mode, count] : stats.openie) {
    rows.push_back({"openie_statements", mode, std::to_string(count.statements)});
    rows.push_back(
        {"openie_triples", mode, std::to_string(count.source_triples)});
  }
  rows.push_back({"pathie", "statements", std::to_string(stats.pathie_statements)});
  rows.push_back(
      {"canonical", "statements", std::to_string(stats.canonical_statements)});
  rows.push_back({"constrained", "statements",
                  std::to_string(stats.constrained_statements)});
  for (const auto &[relation, n] : stats.relations) {
    rows.push_back({"relation", relation, std::to_string(n)});
  }
  return rows;
}

std::vector<std::vector<std::string>> ComplexityRows(
    const ComplexityReport &report) {
  std::vector<std::vector<std::string>> rows = {
      {"unit", "total", "complex", "percent"}};
  auto add = [&](const char *unit, int64_t total, int64_t complex) {
    std::optional<double> pct = ComplexityReport::Percentage(complex, total);
    rows.push_back({unit, std::to_string(total), std::to_string(complex),
                    pct ? FormatDouble(std::round(*pct * 10) / 10) : ""});
  };
  add("sentences", report.sentences_total, report.sentences_complex);
  add("subjects", report.subjects_total, report.subjects_complex);
  add("objects", report.objects_total, report.objects_complex);
  return rows;
}

std::string FormatTsv(const std::vector<std::vector<std::string>> &rows) {
  std::string out;
  for (const auto &row : rows) {
    std::vector<std::string> cells;
    for (const std::string &c : row) cells.push_back(EscapeField(c));
    out += Join(cells, "\t");
    out += '\n';
  }
  return out;
}

std::string FormatAlignedTable(
    const std::vector<std::vector<std::string>> &rows) {
  std::vector<size_t> width;
  for (const auto &row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (size_t k = 0; k < row.size(); ++k) {
      width[k] = std::max(width[k], CodePointLength(row[k]));
    }
  }
  std::string out;
  for (size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (size_t k = 0; k < rows[r].size(); ++k) {
      if (k > 0) line += "  ";
      line += rows[r][k];
      if (k + 1 < rows[r].size()) {
        line.append(width[k] - CodePointLength(rows[r][k]), ' ');
      }
    }
    out += line + '\n';
    if (r == 0) {
      size_t total = 0;
      for (size_t k = 0; k < width.size(); ++k) total += width[k] + (k ? 2 : 0);
      out += std::string(total, '-') + '\n';
    }
  }
  return out;
}

}  // namespace kgx
