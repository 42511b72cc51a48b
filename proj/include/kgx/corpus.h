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

// Core data model and the interchange formats every stage reads and
// writes: PubTator, jsonl, CoNLL-U with character offsets, and the mention
// and statement TSV files.
//
// All character offsets index into Document::Content(), which is the title,
// one space, and the body. Offsets are byte offsets into the UTF-8 content.

#ifndef KGX_CORPUS_H_
#define KGX_CORPUS_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgx {

struct TextSpan {
  int64_t start = 0;  // inclusive
  int64_t end = 0;    // exclusive

  int64_t length() const { return end - start; }
  bool Overlaps(const TextSpan &other) const {
    return start < other.end && other.start < end;
  }
  bool Contains(const TextSpan &other) const {
    return start <= other.start && other.end <= end;
  }
  auto operator<=>(const TextSpan &) const = default;
};

struct Document {
  std::string id;
  std::string title;
  std::string body;
  std::string collection;

  std::string Content() const { return title + " " + body; }
  bool operator==(const Document &) const = default;
};

struct Token {
  int index = 0;  // 1-based
  std::string surface;
  std::string lemma;
  std::string upos;
  int head = 0;  // 0 = root
  std::string deprel;
  TextSpan span;

  bool operator==(const Token &) const = default;
};

struct SentenceParse {
  std::string doc_id;
  int sentence_index = 0;
  std::vector<Token> tokens;
  std::string text;

  // Span from the first token start to the last token end.
  TextSpan Extent() const;
  const Token &token(int index) const { return tokens[index - 1]; }
  int size() const { return static_cast<int>(tokens.size()); }
  bool operator==(const SentenceParse &) const = default;
};

enum class MentionOrigin { kDictionary, kExternal };

struct EntityMention {
  std::string doc_id;
  TextSpan span;
  std::string surface;
  std::string entity_id;
  std::string entity_type;
  MentionOrigin origin = MentionOrigin::kDictionary;

  auto operator<=>(const EntityMention &) const = default;
};

// One side of a statement. Entity arguments carry an id and type; phrase
// arguments (unfiltered OpenIE noun phrases) carry only text. Spans are known
// for arguments anchored in the text.
struct Argument {
  std::optional<TextSpan> span;
  std::string text;
  std::string entity_id;
  std::string entity_type;

  bool IsEntity() const { return !entity_id.empty(); }
  static Argument FromMention(const EntityMention &m) {
    return Argument{m.span, m.surface, m.entity_id, m.entity_type};
  }
  auto operator<=>(const Argument &) const = default;
};

enum class TriggerKind { kVerb, kKeyword, kPhrase };
enum class Extractor { kPathIE, kOpenIE };

struct RawStatement {
  std::string doc_id;
  int sentence_index = -1;  // -1 when the sentence is not resolved
  Argument subject;
  std::string predicate_surface;
  std::string predicate_lemma;
  Argument object;
  TriggerKind trigger = TriggerKind::kPhrase;
  int trigger_token = -1;  // token index of the trigger, PathIE only
  Extractor extractor = Extractor::kPathIE;
  int64_t source = -1;  // index of the source OpenIE triple
  std::string sentence;

  auto operator<=>(const RawStatement &) const = default;
};

std::string_view OriginName(MentionOrigin origin);
std::string_view TriggerName(TriggerKind trigger);
std::string_view ExtractorName(Extractor extractor);
bool ParseOrigin(std::string_view s, MentionOrigin *out);
bool ParseTrigger(std::string_view s, TriggerKind *out);
bool ParseExtractor(std::string_view s, Extractor *out);

// Documents with their contents precomputed, addressable by id.
class DocumentIndex {
 public:
  DocumentIndex() = default;
  explicit DocumentIndex(std::vector<Document> documents);

  // Adds a document; throws on a duplicate id.
  void Add(Document document);

  const Document *Find(std::string_view id) const;
  const std::string *Content(std::string_view id) const;
  const std::vector<Document> &documents() const { return documents_; }
  size_t size() const { return documents_.size(); }

 private:
  std::vector<Document> documents_;
  std::vector<std::string> contents_;
  std::unordered_map<std::string, size_t> index_;
};

// Documents.

enum class DocumentFormat { kJsonl, kPubTator };
bool ParseDocumentFormat(std::string_view s, DocumentFormat *out);

std::vector<Document> ParseDocuments(std::string_view content,
                                     DocumentFormat format,
                                     std::string_view source,
                                     std::string_view collection = "");
std::vector<Document> LoadDocuments(const std::filesystem::path &path,
                                    DocumentFormat format,
                                    std::string_view collection = "");

// Sorted by id. PubTator output may include annotation lines for the given
// mentions.
std::string FormatDocuments(std::vector<Document> documents,
                            DocumentFormat format,
                            const std::vector<EntityMention> &mentions = {});
void WriteDocuments(const std::vector<Document> &documents,
                    const std::filesystem::path &path, DocumentFormat format);

// Dependency parses.

enum class OnInvalid { kSkip, kAbort };

struct ParseLoadResult {
  std::vector<SentenceParse> parses;
  // One message per rejected sentence, naming doc_id and sent_index.
  std::vector<std::string> errors;
};

// Empty if the parse satisfies the tree and span invariants, otherwise the
// reason it does not.
std::string ValidateTree(const SentenceParse &parse);

ParseLoadResult ParseConllu(std::string_view content, std::string_view source,
                            OnInvalid on_invalid = OnInvalid::kSkip);
ParseLoadResult LoadParses(const std::filesystem::path &path,
                           OnInvalid on_invalid = OnInvalid::kSkip);

// Checks parses against their documents: the document must exist and every
// token surface must equal the content at its span. Fills in missing
// sentence text. Failing sentences move to result->errors.
void AlignParses(const DocumentIndex &docs, ParseLoadResult *result,
                 OnInvalid on_invalid = OnInvalid::kSkip);

std::string FormatConllu(std::vector<SentenceParse> parses);
void WriteParses(const std::vector<SentenceParse> &parses,
                 const std::filesystem::path &path);

// Mentions.

enum class MentionFormat { kPubTator, kTsv };
bool ParseMentionFormat(std::string_view s, MentionFormat *out);

// Reads mention TSV (6 columns: doc_id start end surface type entity_id, or
// the 7-column form written by WriteMentions with a trailing origin). When
// docs is non-null, spans are validated against document contents.
std::vector<EntityMention> ParseMentionsTsv(std::string_view content,
                                            std::string_view source,
                                            const DocumentIndex *docs);

// External annotations. For PubTator input, the documents of the same file
// are used for validation in addition to docs. Origin is always external.
std::vector<EntityMention> LoadExternalMentions(
    const std::filesystem::path &path, MentionFormat format,
    const DocumentIndex &docs);

std::vector<EntityMention> LoadMentions(const std::filesystem::path &path,
                                        const DocumentIndex *docs = nullptr);
std::string FormatMentions(std::vector<EntityMention> mentions);
void WriteMentions(const std::vector<EntityMention> &mentions,
                   const std::filesystem::path &path);

// Statements.

// Column names of the statement TSV, in order.
const std::vector<std::string> &StatementColumns();

// Appends the statement columns of one row, without a newline.
void AppendStatementFields(const RawStatement &s, std::string *out);

// Parses the statement columns starting at fields[offset]. Throws on
// malformed values, with `where` in the message.
RawStatement ParseStatementFields(const std::vector<std::string> &fields,
                                  size_t offset, const std::string &where);

std::vector<RawStatement> ParseStatements(std::string_view content,
                                          std::string_view source);
std::vector<RawStatement> LoadStatements(const std::filesystem::path &path);
std::string FormatStatements(std::vector<RawStatement> statements);
void WriteStatements(const std::vector<RawStatement> &statements,
                     const std::filesystem::path &path);

}  // namespace kgx

#endif  // KGX_CORPUS_H_
