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

// Command-line driver. Exit codes: 0 success, 1 invalid configuration or
// usage, 2 stage failure.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kgx/pipeline.h"
#include "kgx/sparql.h"
#include "kgx/vocabulary.h"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kFailed = 2;

struct Flags {
  std::string config;
  std::string workspace;
  std::optional<int> workers;

  std::optional<int> min_length;
  bool no_homonym_rule = false;
  bool no_abbreviation_rule = false;
  std::string ignore_list;
  std::string keywords;
  bool keep_negations = false;
  std::string filter;
  bool entity_sentences_only = false;
  std::optional<double> min_similarity;
  std::optional<int64_t> min_frequency;
  bool keep_unmapped = false;
  std::string constraints;
  std::string report;
  std::string connectives;
  std::string prepositions;
};

std::filesystem::path Absolute(const std::string &p) {
  return std::filesystem::absolute(p).lexically_normal();
}

void ApplyOverrides(const Flags &f, kgx::PipelineConfig *c,
                    std::vector<std::string> *problems) {
  if (!f.workspace.empty()) c->workspace = Absolute(f.workspace);
  if (f.workers) c->workers = *f.workers;
  if (f.min_length) c->linker.min_length = *f.min_length;
  if (f.no_homonym_rule) c->linker.homonym_rule = false;
  if (f.no_abbreviation_rule) c->linker.abbreviation_rule = false;
  if (!f.ignore_list.empty()) c->vocabulary.ignore = Absolute(f.ignore_list);
  if (!f.keywords.empty()) c->vocabulary.keywords = Absolute(f.keywords);
  if (f.keep_negations) {
    c->pathie.keep_negations = true;
    c->openie.keep_negations = true;
  }
  if (!f.filter.empty() &&
      !kgx::ParseFilterMode(f.filter, &c->openie.filter)) {
    problems->push_back("--filter: unknown mode '" + f.filter + "'");
  }
  if (f.entity_sentences_only) c->openie.entity_sentences_only = true;
  if (f.min_similarity) c->canonical.min_similarity = *f.min_similarity;
  if (f.min_frequency) c->canonical.min_phrase_frequency = *f.min_frequency;
  if (f.keep_unmapped) c->canonical.keep_unmapped = true;
  if (!f.constraints.empty()) {
    c->vocabulary.constraints = Absolute(f.constraints);
  }
  if (!f.connectives.empty()) c->connectives = Absolute(f.connectives);
  if (!f.prepositions.empty()) c->prepositions = Absolute(f.prepositions);
}

std::optional<kgx::PipelineConfig> Configure(const Flags &flags) {
  if (flags.config.empty()) {
    std::cerr << "error: --config is required\n";
    return std::nullopt;
  }
  try {
    kgx::PipelineConfig config = kgx::LoadConfig(flags.config);
    std::vector<std::string> problems;
    ApplyOverrides(flags, &config, &problems);
    for (std::string &p : kgx::CheckConfig(config)) problems.push_back(p);
    if (!problems.empty()) throw kgx::ConfigError(problems);
    return config;
  } catch (const kgx::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

int WriteReport(const std::filesystem::path &workspace,
                const std::string &dest, bool print) {
  try {
    kgx::WorkspaceReport report = kgx::BuildReport(workspace);
    std::filesystem::path dir = dest.empty() ? workspace : Absolute(dest);
    std::filesystem::create_directories(dir);
    kgx::WriteFile(dir / "report.txt", report.text);
    kgx::WriteFile(dir / "report.tsv", report.tsv);
    if (print) std::cout << report.text;
    return kOk;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}

int RunStages(const Flags &flags, kgx::Stage last,
              void (*adjust)(kgx::PipelineConfig *)) {
  std::optional<kgx::PipelineConfig> config = Configure(flags);
  if (!config) return kInvalid;
  if (adjust != nullptr) {
    adjust(&*config);
    std::vector<std::string> problems = kgx::CheckConfig(*config);
    if (!problems.empty()) {
      std::cerr << "error: " << kgx::ConfigError(problems).what() << "\n";
      return kInvalid;
    }
  }
  kgx::Pipeline pipeline(*config);
  kgx::RunResult result = pipeline.Run(kgx::RunOptions{last});
  for (const kgx::StageRun &s : result.stages) {
    std::cerr << kgx::StageName(s.stage) << ": "
              << (s.executed ? "executed" : "up to date") << " ("
              << s.seconds << " s)\n";
  }
  if (result.failed) {
    std::cerr << "error: stage " << result.error << "\n";
    return kFailed;
  }
  if (last == kgx::Stage::kAnalytics) {
    std::cout << kgx::ReadFile(pipeline.StageDir(kgx::Stage::kAnalytics) /
                               "extraction.txt")
              << "\n"
              << kgx::ReadFile(pipeline.StageDir(kgx::Stage::kAnalytics) /
                               "complexity.txt");
    if (!flags.report.empty()) {
      return WriteReport(config->workspace, flags.report, false);
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Knowledge graph extraction from text collections"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--config", f.config, "Pipeline config (JSON)");
    cmd->add_option("--workspace", f.workspace, "Workspace directory");
    cmd->add_option("--workers", f.workers, "Worker threads")
        ->check(CLI::PositiveNumber);
  };
  auto add_linker = [&](CLI::App *cmd) {
    cmd->add_option("--min-length", f.min_length,
                    "Minimum surface length of dictionary matches");
    cmd->add_flag("--no-homonym-rule", f.no_homonym_rule);
    cmd->add_flag("--no-abbreviation-rule", f.no_abbreviation_rule);
    cmd->add_option("--ignore-list", f.ignore_list, "Synonyms never linked");
  };
  auto add_extract = [&](CLI::App *cmd) {
    cmd->add_option("--keywords", f.keywords, "PathIE keyword phrases");
    cmd->add_flag("--keep-negations", f.keep_negations);
    cmd->add_option("--filter", f.filter,
                    "OpenIE entity filter: none, partial, exact, subject");
    cmd->add_flag("--entity-sentences-only", f.entity_sentences_only);
  };
  auto add_canonical = [&](CLI::App *cmd) {
    cmd->add_option("--min-similarity", f.min_similarity);
    cmd->add_option("--min-frequency", f.min_frequency);
    cmd->add_flag("--keep-unmapped", f.keep_unmapped);
    cmd->add_option("--constraints", f.constraints, "Relation type constraints");
  };
  auto add_analytics = [&](CLI::App *cmd) {
    cmd->add_option("--report", f.report, "Directory for report.txt/.tsv");
    cmd->add_option("--connectives", f.connectives);
    cmd->add_option("--prepositions", f.prepositions);
  };

  struct Command {
    const char *name;
    const char *help;
    kgx::Stage last;
    void (*adjust)(kgx::PipelineConfig *);
  };
  const Command commands[] = {
      {"ingest", "Load and validate the corpus inputs", kgx::Stage::kIngest,
       nullptr},
      {"link", "Dictionary entity linking", kgx::Stage::kLink, nullptr},
      {"pathie", "Path-based extraction only", kgx::Stage::kExtract,
       [](kgx::PipelineConfig *c) {
         c->pathie.enabled = true;
         c->openie.enabled = false;
       }},
      {"clean-openie", "OpenIE cleaning only", kgx::Stage::kExtract,
       [](kgx::PipelineConfig *c) {
         c->pathie.enabled = false;
         c->openie.enabled = true;
       }},
      {"canonicalize", "Map predicates to relations",
       kgx::Stage::kCanonicalize, nullptr},
      {"constrain", "Apply relation type constraints", kgx::Stage::kConstrain,
       nullptr},
      {"stats", "Complexity and extraction statistics",
       kgx::Stage::kAnalytics, nullptr},
      {"run", "All stages", kgx::Stage::kAnalytics, nullptr},
  };
  const Command *selected = nullptr;
  for (const Command &c : commands) {
    CLI::App *cmd = app.add_subcommand(c.name, c.help);
    add_common(cmd);
    add_linker(cmd);
    add_extract(cmd);
    add_canonical(cmd);
    add_analytics(cmd);
    cmd->callback([&selected, &c] { selected = &c; });
  }

  CLI::App *report = app.add_subcommand("report", "Consolidated run report");
  add_common(report);
  report->add_option("--report", f.report, "Directory for report.txt/.tsv");

  std::string endpoint;
  std::string query_file;
  std::string entity_type;
  std::string out;
  std::string cache;
  CLI::App *fetch =
      app.add_subcommand("fetch-vocab", "Entity vocabulary from SPARQL");
  fetch->add_option("--endpoint", endpoint)->required();
  fetch->add_option("--query", query_file, "File holding the query")
      ->required()
      ->check(CLI::ExistingFile);
  fetch->add_option("--type", entity_type)->required();
  fetch->add_option("--out", out)->required();
  fetch->add_option("--cache", cache, "Cached response body");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  if (selected != nullptr) return RunStages(f, selected->last, selected->adjust);

  if (report->parsed()) {
    std::filesystem::path workspace;
    if (!f.workspace.empty()) {
      workspace = Absolute(f.workspace);
    } else if (!f.config.empty()) {
      try {
        workspace = kgx::LoadConfig(f.config).workspace;
      } catch (const kgx::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
      }
    } else {
      std::cerr << "error: --workspace or --config is required\n";
      return kInvalid;
    }
    return WriteReport(workspace, f.report, true);
  }

  if (fetch->parsed()) {
    try {
      kgx::EntityVocabulary vocab = kgx::FetchSparqlVocab(
          endpoint, kgx::ReadFile(query_file), entity_type, cache);
      kgx::WriteEntityVocab(vocab, out);
      std::cerr << vocab.size() << " entities written to " << out << "\n";
      return kOk;
    } catch (const std::exception &e) {
      std::cerr << "error: " << e.what() << "\n";
      return kFailed;
    }
  }
  return kInvalid;
}
