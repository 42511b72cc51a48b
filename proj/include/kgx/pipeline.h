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

// Staged execution over a file workspace.
//
// Stages run in the order ingest, link, extract, canonicalize, constrain,
// analytics. Each writes into <workspace>/<stage>/ and finishes by writing
// manifest.json with the stage's input digest and the SHA-256 of every
// output. The input digest covers the stage name, the config values the
// stage reads, the contents of the files it reads from outside the
// workspace, and the input digests of the stages it depends on. A stage
// whose manifest is done, whose digest matches and whose outputs are intact
// is skipped.

#ifndef KGX_PIPELINE_H_
#define KGX_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgx/canonical.h"
#include "kgx/corpus.h"
#include "kgx/linker.h"
#include "kgx/openie.h"
#include "kgx/text.h"

namespace kgx {

struct PipelineConfig {
  std::filesystem::path workspace;
  int workers = 1;

  struct Inputs {
    std::filesystem::path documents;
    DocumentFormat documents_format = DocumentFormat::kJsonl;
    std::string collection;
    std::filesystem::path parses;
    std::filesystem::path openie;
    std::filesystem::path external_mentions;
    MentionFormat external_mentions_format = MentionFormat::kTsv;
  } inputs;

  struct Vocabulary {
    std::vector<std::filesystem::path> entities;
    std::filesystem::path ignore;
    std::filesystem::path rules;
    std::filesystem::path relations;
    std::filesystem::path constraints;
    std::filesystem::path keywords;
    std::filesystem::path stopwords;
    std::filesystem::path adverbs;
  } vocabulary;

  LinkerOptions linker;

  struct PathIE {
    bool enabled = true;
    bool keep_negations = false;
  } pathie;

  struct OpenIE {
    bool enabled = false;
    // Mode whose statements flow downstream.
    FilterMode filter = FilterMode::kExact;
    // Modes evaluated for the extraction statistics.
    std::vector<FilterMode> compare = {FilterMode::kNone, FilterMode::kPartial,
                                       FilterMode::kExact,
                                       FilterMode::kSubject};
    bool keep_negations = false;
    bool entity_sentences_only = false;
  } openie;

  std::filesystem::path embeddings;
  CanonicalizationParams canonical;

  std::filesystem::path connectives;
  std::filesystem::path prepositions;
};

// Every problem found, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string> &problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Parses a JSON config. Relative paths resolve against base_dir. Throws
// ConfigError listing all malformed or unknown fields.
PipelineConfig ParseConfig(std::string_view json, const std::filesystem::path &base_dir);
PipelineConfig LoadConfig(const std::filesystem::path &path);

// Semantic checks: referenced files exist, at least one extractor, values in
// range. Returns the problems found.
std::vector<std::string> CheckConfig(const PipelineConfig &config);

// LoadConfig followed by CheckConfig; throws ConfigError on any problem.
PipelineConfig ValidateConfig(const std::filesystem::path &path);

enum class Stage { kIngest, kLink, kExtract, kCanonicalize, kConstrain, kAnalytics };
inline constexpr int kStageCount = 6;
std::string_view StageName(Stage stage);
bool ParseStage(std::string_view s, Stage *out);
const std::vector<Stage> &AllStages();

struct OutputRecord {
  std::string path;  // relative to the stage directory
  std::string sha256;

  bool operator==(const OutputRecord &) const = default;
};

struct StageManifest {
  std::string stage;
  std::string input_digest;
  std::vector<OutputRecord> outputs;
  std::string status;  // "done" or "failed"
  double seconds = 0;
  std::map<std::string, int64_t> counts;
  std::string error;
};

std::optional<StageManifest> ReadManifest(const std::filesystem::path &path);
void WriteManifest(const StageManifest &manifest,
                   const std::filesystem::path &path);

std::string Sha256Hex(std::string_view data);
std::string FileSha256(const std::filesystem::path &path);

struct StageRun {
  Stage stage;
  bool executed = false;
  double seconds = 0;
};

struct RunResult {
  std::vector<StageRun> stages;
  double total_seconds = 0;
  bool failed = false;
  std::string error;  // message of the failing stage
};

struct RunOptions {
  // Stages after this one are not run.
  Stage last = Stage::kAnalytics;
};

class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  // Runs the stages up to options.last; returns per-stage status. A stage
  // failure is recorded in its manifest and stops the run.
  RunResult Run(const RunOptions &options = {});

  // Input digest of a stage under the current config and inputs.
  std::string StageDigest(Stage stage);

  // True when the stage's manifest is done, current and its outputs intact.
  bool IsUpToDate(Stage stage);

  std::filesystem::path StageDir(Stage stage) const;
  const PipelineConfig &config() const { return config_; }

 private:
  std::map<std::string, int64_t> Execute(Stage stage,
                                         std::vector<std::string> *outputs);
  std::map<std::string, int64_t> RunIngest(std::vector<std::string> *outputs);
  std::map<std::string, int64_t> RunLink(std::vector<std::string> *outputs);
  std::map<std::string, int64_t> RunExtract(std::vector<std::string> *outputs);
  std::map<std::string, int64_t> RunCanonicalize(
      std::vector<std::string> *outputs);
  std::map<std::string, int64_t> RunConstrain(std::vector<std::string> *outputs);
  std::map<std::string, int64_t> RunAnalytics(std::vector<std::string> *outputs);

  PipelineConfig config_;
  std::map<Stage, std::string> digests_;
};

// Calls fn(i) for i in [0, n) on up to `workers` threads.
void ParallelFor(size_t n, int workers, const std::function<void(size_t)> &fn);

struct WorkspaceReport {
  std::string text;
  std::string tsv;
};

// Consolidated report over the manifests, run.json and analytics outputs of
// a workspace. Throws if no stage is done.
WorkspaceReport BuildReport(const std::filesystem::path &workspace);

}  // namespace kgx

#endif  // KGX_PIPELINE_H_
