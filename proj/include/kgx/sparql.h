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

// Minimal SPARQL client for assembling entity vocabularies from a public
// endpoint. The query must project ?item, ?label and ?altLabels, with
// alternative labels concatenated using ';' (GROUP_CONCAT separator).

#ifndef KGX_SPARQL_H_
#define KGX_SPARQL_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "kgx/vocabulary.h"

namespace kgx {

// Parses a SPARQL 1.1 tab-separated result body. Rows of the same item merge.
// Throws on a missing header column or a malformed row.
EntityVocabulary ParseSparqlTsv(std::string_view body,
                                std::string_view entity_type);

// Issues GET <endpoint_url>?query=... with Accept: text/tab-separated-values.
// When cache_path is set and exists, it is loaded instead of contacting the
// endpoint; after a successful fetch the result is written there.
EntityVocabulary FetchSparqlVocab(const std::string &endpoint_url,
                                  const std::string &query,
                                  const std::string &entity_type,
                                  const std::filesystem::path &cache_path = {});

}  // namespace kgx

#endif  // KGX_SPARQL_H_
