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

// String helpers shared by every module: case folding, whitespace
// normalization, TSV escaping and strict number parsing.

#ifndef KGX_TEXT_H_
#define KGX_TEXT_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgx {

// All recoverable failures (bad input files, invalid values, I/O) are
// reported with this exception. Messages carry file and line when known.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ASCII case folding. Bytes >= 0x80 pass through unchanged.
std::string CaseFold(std::string_view s);

// Trims and collapses each run of whitespace into a single space.
std::string CollapseWhitespace(std::string_view s);

// CaseFold(CollapseWhitespace(s)).
std::string NormalizePhrase(std::string_view s);

std::string_view Trim(std::string_view s);

std::vector<std::string> Split(std::string_view s, char sep);

// Splits on runs of whitespace, dropping empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view s);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

inline bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Letters, digits and any non-ASCII byte count as word characters, so a
// UTF-8 sequence is never split by a token boundary.
inline bool IsWordChar(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') ||
         (u >= 'A' && u <= 'Z') || u >= 0x80;
}

inline bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool IsAsciiUpper(char c) { return c >= 'A' && c <= 'Z'; }

inline char FoldChar(char c) {
  return IsAsciiUpper(c) ? static_cast<char>(c - 'A' + 'a') : c;
}

// Maximal runs of word characters, case-folded.
std::vector<std::string> WordTokens(std::string_view s);

// Number of UTF-8 code points.
std::size_t CodePointLength(std::string_view s);

// True if [begin, end) does not cut through a run of word characters.
bool OnWordBoundaries(std::string_view text, std::size_t begin,
                      std::size_t end);

// Backslash escaping for free-text TSV fields: \\ \t \n \r.
std::string EscapeField(std::string_view s);
std::string UnescapeField(std::string_view s);

// Shortest representation that parses back to the identical double.
std::string FormatDouble(double v);

// Strict parsers; the whole string must be consumed.
bool ParseInt64(std::string_view s, int64_t *out);
bool ParseDouble(std::string_view s, double *out);

std::string ReadFile(const std::filesystem::path &path);

// Writes through a temporary file and renames it into place.
void WriteFile(const std::filesystem::path &path, std::string_view content);

// Lines without their terminators. A trailing newline does not produce an
// extra empty line; a trailing '\r' is removed.
std::vector<std::string> SplitLines(std::string_view content);

}  // namespace kgx

#endif  // KGX_TEXT_H_
