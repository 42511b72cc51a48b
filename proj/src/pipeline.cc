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

#include "kgx/pipeline.h"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "kgx/analytics.h"
#include "kgx/pathie.h"
#include "kgx/vocabulary.h"

namespace kgx {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string JoinProblems(const std::vector<std::string> &problems) {
  std::string out = "invalid configuration:";
  for (const std::string &p : problems) out += "\n  " + p;
  return out;
}

// Typed field access that records problems instead of throwing.
class ConfigReader {
 public:
  ConfigReader(const fs::path &base_dir, std::vector<std::string> *problems)
      : base_dir_(base_dir), problems_(problems) {}

  // Returns the object at key (or an empty one) and checks its keys.
  const json &Section(const json &parent, const std::string &key,
                      const std::string &where,
                      const std::set<std::string> &allowed) {
    static const json kEmpty = json::object();
    auto it = parent.find(key);
    if (it == parent.end()) return kEmpty;
    if (!it->is_object()) {
      Problem(Join(where, key) + ": expected an object");
      return kEmpty;
    }
    CheckKeys(*it, Join(where, key), allowed);
    return *it;
  }

  void CheckKeys(const json &obj, const std::string &where,
                 const std::set<std::string> &allowed) {
    for (const auto &[k, v] : obj.items()) {
      if (allowed.count(k) == 0) Problem(Join(where, k) + ": unknown field");
    }
  }

  void Path(const json &obj, const std::string &key, const std::string &where,
            fs::path *out) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    if (!it->is_string()) {
      Problem(Join(where, key) + ": expected a path string");
      return;
    }
    *out = Resolve(it->get<std::string>());
  }

  void Paths(const json &obj, const std::string &key, const std::string &where,
             std::vector<fs::path> *out) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    if (it->is_string()) {
      out->push_back(Resolve(it->get<std::string>()));
      return;
    }
    if (!it->is_array()) {
      Problem(Join(where, key) + ": expected a list of paths");
      return;
    }
    for (const json &v : *it) {
      if (!v.is_string()) {
        Problem(Join(where, key) + ": expected a list of paths");
        return;
      }
      out->push_back(Resolve(v.get<std::string>()));
    }
  }

  void String(const json &obj, const std::string &key, const std::string &where,
              std::string *out) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    if (!it->is_string()) {
      Problem(Join(where, key) + ": expected a string");
      return;
    }
    *out = it->get<std::string>();
  }

  void Bool(const json &obj, const std::string &key, const std::string &where,
            bool *out) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    if (!it->is_boolean()) {
      Problem(Join(where, key) + ": expected true or false");
      return;
    }
    *out = it->get<bool>();
  }

  template <typename Int>
  void Integer(const json &obj, const std::string &key,
               const std::string &where, Int *out) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    if (!it->is_number_integer()) {
      Problem(Join(where, key) + ": expected an integer");
      return;
    }
    *out = static_cast<Int>(it->get<int64_t>());
  }

  void Number(const json &obj, const std::string &key, const std::string &where,
              double *out) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    if (!it->is_number()) {
      Problem(Join(where, key) + ": expected a number");
      return;
    }
    *out = it->get<double>();
  }

  template <typename Enum>
  void Choice(const json &obj, const std::string &key, const std::string &where,
              bool (*parse)(std::string_view, Enum *), Enum *out) {
    std::string s;
    if (obj.find(key) == obj.end()) return;
    String(obj, key, where, &s);
    if (!s.empty() && !parse(s, out)) {
      Problem(Join(where, key) + ": unknown value '" + s + "'");
    }
  }

  void Problem(std::string message) { problems_->push_back(std::move(message)); }

 private:
  static std::string Join(const std::string &where, const std::string &key) {
    return where.empty() ? key : where + "." + key;
  }

  fs::path Resolve(const std::string &p) const {
    if (p.empty()) return {};
    fs::path path(p);
    return path.is_absolute() ? path : (base_dir_ / path).lexically_normal();
  }

  fs::path base_dir_;
  std::vector<std::string> *problems_;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(JoinProblems(problems)), problems_(std::move(problems)) {}

PipelineConfig ParseConfig(std::string_view text, const fs::path &base_dir) {
  std::vector<std::string> problems;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception &e) {
    throw ConfigError({std::string("malformed JSON: ") + e.what()});
  }
  if (!root.is_object()) throw ConfigError({"top level must be an object"});

  ConfigReader r(base_dir, &problems);
  PipelineConfig c;
  r.CheckKeys(root, "",
              {"workspace", "workers", "inputs", "vocabulary", "linker",
               "extractors", "canonical", "analytics"});
  c.workspace = base_dir / "workspace";
  r.Path(root, "workspace", "", &c.workspace);
  r.Integer(root, "workers", "", &c.workers);

  const json &in = r.Section(
      root, "inputs", "",
      {"documents", "documents_format", "collection", "parses", "openie",
       "external_mentions", "external_mentions_format"});
  r.Path(in, "documents", "inputs", &c.inputs.documents);
  r.Choice(in, "documents_format", "inputs", &ParseDocumentFormat,
           &c.inputs.documents_format);
  r.String(in, "collection", "inputs", &c.inputs.collection);
  r.Path(in, "parses", "inputs", &c.inputs.parses);
  r.Path(in, "openie", "inputs", &c.inputs.openie);
  r.Path(in, "external_mentions", "inputs", &c.inputs.external_mentions);
  r.Choice(in, "external_mentions_format", "inputs", &ParseMentionFormat,
           &c.inputs.external_mentions_format);

  const json &voc = r.Section(
      root, "vocabulary", "",
      {"entities", "ignore", "rules", "relations", "constraints", "keywords",
       "stopwords", "adverbs"});
  r.Paths(voc, "entities", "vocabulary", &c.vocabulary.entities);
  r.Path(voc, "ignore", "vocabulary", &c.vocabulary.ignore);
  r.Path(voc, "rules", "vocabulary", &c.vocabulary.rules);
  r.Path(voc, "relations", "vocabulary", &c.vocabulary.relations);
  r.Path(voc, "constraints", "vocabulary", &c.vocabulary.constraints);
  r.Path(voc, "keywords", "vocabulary", &c.vocabulary.keywords);
  r.Path(voc, "stopwords", "vocabulary", &c.vocabulary.stopwords);
  r.Path(voc, "adverbs", "vocabulary", &c.vocabulary.adverbs);

  const json &lk = r.Section(
      root, "linker", "",
      {"min_length", "case_sensitive", "homonym_rule", "abbreviation_rule"});
  r.Integer(lk, "min_length", "linker", &c.linker.min_length);
  r.Bool(lk, "case_sensitive", "linker", &c.linker.case_sensitive);
  r.Bool(lk, "homonym_rule", "linker", &c.linker.homonym_rule);
  r.Bool(lk, "abbreviation_rule", "linker", &c.linker.abbreviation_rule);

  const json &ex = r.Section(root, "extractors", "", {"pathie", "openie"});
  const json &pi =
      r.Section(ex, "pathie", "extractors", {"enabled", "keep_negations"});
  r.Bool(pi, "enabled", "extractors.pathie", &c.pathie.enabled);
  r.Bool(pi, "keep_negations", "extractors.pathie", &c.pathie.keep_negations);
  const json &oi = r.Section(ex, "openie", "extractors",
                             {"enabled", "filter", "compare", "keep_negations",
                              "entity_sentences_only"});
  r.Bool(oi, "enabled", "extractors.openie", &c.openie.enabled);
  r.Choice(oi, "filter", "extractors.openie", &ParseFilterMode,
           &c.openie.filter);
  if (auto it = oi.find("compare"); it != oi.end()) {
    c.openie.compare.clear();
    if (!it->is_array()) {
      r.Problem("extractors.openie.compare: expected a list of filter modes");
    } else {
      for (const json &v : *it) {
        FilterMode m;
        if (!v.is_string() || !ParseFilterMode(v.get<std::string>(), &m)) {
          r.Problem("extractors.openie.compare: unknown filter mode " +
                    v.dump());
          continue;
        }
        c.openie.compare.push_back(m);
      }
    }
  }
  r.Bool(oi, "keep_negations", "extractors.openie", &c.openie.keep_negations);
  r.Bool(oi, "entity_sentences_only", "extractors.openie",
         &c.openie.entity_sentences_only);

  const json &cn = r.Section(
      root, "canonical", "",
      {"embeddings", "min_similarity", "min_frequency", "keep_unmapped"});
  r.Path(cn, "embeddings", "canonical", &c.embeddings);
  r.Number(cn, "min_similarity", "canonical", &c.canonical.min_similarity);
  r.Integer(cn, "min_frequency", "canonical",
            &c.canonical.min_phrase_frequency);
  r.Bool(cn, "keep_unmapped", "canonical", &c.canonical.keep_unmapped);

  const json &an =
      r.Section(root, "analytics", "", {"connectives", "prepositions"});
  r.Path(an, "connectives", "analytics", &c.connectives);
  r.Path(an, "prepositions", "analytics", &c.prepositions);

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

PipelineConfig LoadConfig(const fs::path &path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error &e) {
    throw ConfigError({e.what()});
  }
  return ParseConfig(text, fs::absolute(path).parent_path());
}

std::vector<std::string> CheckConfig(const PipelineConfig &c) {
  std::vector<std::string> problems;
  auto require = [&](const fs::path &p, const std::string &what) {
    if (p.empty()) {
      problems.push_back(what + ": required");
    } else if (!fs::is_regular_file(p)) {
      problems.push_back(what + ": file not found: " + p.string());
    }
  };
  auto optional = [&](const fs::path &p, const std::string &what) {
    if (!p.empty() && !fs::is_regular_file(p)) {
      problems.push_back(what + ": file not found: " + p.string());
    }
  };

  if (c.workspace.empty()) problems.push_back("workspace: required");
  if (c.workers < 1) problems.push_back("workers: must be at least 1");
  require(c.inputs.documents, "inputs.documents");
  if (c.pathie.enabled || c.openie.entity_sentences_only) {
    require(c.inputs.parses, "inputs.parses");
  } else {
    optional(c.inputs.parses, "inputs.parses");
  }
  if (c.openie.enabled) {
    require(c.inputs.openie, "inputs.openie");
  } else {
    optional(c.inputs.openie, "inputs.openie");
  }
  optional(c.inputs.external_mentions, "inputs.external_mentions");
  if (c.vocabulary.entities.empty() && c.inputs.external_mentions.empty()) {
    problems.push_back(
        "vocabulary.entities: required unless inputs.external_mentions is set");
  }
  for (const fs::path &p : c.vocabulary.entities) {
    optional(p, "vocabulary.entities");
  }
  optional(c.vocabulary.ignore, "vocabulary.ignore");
  optional(c.vocabulary.rules, "vocabulary.rules");
  require(c.vocabulary.relations, "vocabulary.relations");
  optional(c.vocabulary.constraints, "vocabulary.constraints");
  optional(c.vocabulary.keywords, "vocabulary.keywords");
  optional(c.vocabulary.stopwords, "vocabulary.stopwords");
  optional(c.vocabulary.adverbs, "vocabulary.adverbs");
  optional(c.embeddings, "canonical.embeddings");
  optional(c.connectives, "analytics.connectives");
  optional(c.prepositions, "analytics.prepositions");

  if (!c.pathie.enabled && !c.openie.enabled) {
    problems.push_back("extractors: at least one extractor must be enabled");
  }
  if (c.linker.min_length < 1) {
    problems.push_back("linker.min_length: must be at least 1");
  }
  if (c.canonical.min_similarity < 0 || c.canonical.min_similarity > 1) {
    problems.push_back("canonical.min_similarity: must lie in [0, 1]");
  }
  if (c.canonical.min_phrase_frequency < 0) {
    problems.push_back("canonical.min_frequency: must not be negative");
  }
  return problems;
}

PipelineConfig ValidateConfig(const fs::path &path) {
  PipelineConfig c = LoadConfig(path);
  std::vector<std::string> problems = CheckConfig(c);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kIngest:
      return "ingest";
    case Stage::kLink:
      return "link";
    case Stage::kExtract:
      return "extract";
    case Stage::kCanonicalize:
      return "canonicalize";
    case Stage::kConstrain:
      return "constrain";
    case Stage::kAnalytics:
      return "analytics";
  }
  return "ingest";
}

bool ParseStage(std::string_view s, Stage *out) {
  for (Stage st : AllStages()) {
    if (s == StageName(st)) {
      *out = st;
      return true;
    }
  }
  return false;
}

const std::vector<Stage> &AllStages() {
  static const std::vector<Stage> stages = {
      Stage::kIngest,       Stage::kLink,      Stage::kExtract,
      Stage::kCanonicalize, Stage::kConstrain, Stage::kAnalytics};
  return stages;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string FileSha256(const fs::path &path) {
  return Sha256Hex(ReadFile(path));
}

std::optional<StageManifest> ReadManifest(const fs::path &path) {
  if (!fs::is_regular_file(path)) return std::nullopt;
  try {
    json j = json::parse(ReadFile(path));
    StageManifest m;
    m.stage = j.at("stage").get<std::string>();
    m.input_digest = j.at("input_digest").get<std::string>();
    m.status = j.at("status").get<std::string>();
    m.seconds = j.value("seconds", 0.0);
    m.error = j.value("error", "");
    for (const json &o : j.at("outputs")) {
      m.outputs.push_back(OutputRecord{o.at("path").get<std::string>(),
                                       o.at("sha256").get<std::string>()});
    }
    if (j.contains("counts")) {
      for (const auto &[k, v] : j["counts"].items()) {
        m.counts[k] = v.get<int64_t>();
      }
    }
    return m;
  } catch (const std::exception &) {
    // A corrupt manifest means the stage has to run again.
    return std::nullopt;
  }
}

void WriteManifest(const StageManifest &m, const fs::path &path) {
  ordered_json j;
  j["stage"] = m.stage;
  j["status"] = m.status;
  j["input_digest"] = m.input_digest;
  j["seconds"] = m.seconds;
  ordered_json outputs = ordered_json::array();
  for (const OutputRecord &o : m.outputs) {
    outputs.push_back({{"path", o.path}, {"sha256", o.sha256}});
  }
  j["outputs"] = outputs;
  ordered_json counts = ordered_json::object();
  for (const auto &[k, v] : m.counts) counts[k] = v;
  j["counts"] = counts;
  if (!m.error.empty()) j["error"] = m.error;
  WriteFile(path, j.dump(2) + "\n");
}

void ParallelFor(size_t n, int workers, const std::function<void(size_t)> &fn) {
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  const size_t count = std::min<size_t>(workers, n);
  for (size_t t = 0; t < count; ++t) threads.emplace_back(work);
  for (std::thread &t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

std::string FilterFileName(FilterMode mode) {
  return "openie_" + std::string(FilterModeName(mode)) + ".tsv";
}

std::vector<FilterMode> OpenIEModes(const PipelineConfig &c) {
  std::set<int> seen;
  std::vector<FilterMode> modes;
  auto add = [&](FilterMode m) {
    if (seen.insert(static_cast<int>(m)).second) modes.push_back(m);
  };
  add(c.openie.filter);
  for (FilterMode m : c.openie.compare) add(m);
  std::sort(modes.begin(), modes.end());
  return modes;
}

std::string PathString(const fs::path &p) { return p.empty() ? "" : "set"; }

// Config values read by each stage. File inputs enter the digest by content,
// so only their presence is recorded here.
json StageConfig(const PipelineConfig &c, Stage stage) {
  switch (stage) {
    case Stage::kIngest:
      return {{"documents_format", c.inputs.documents_format ==
                                           DocumentFormat::kJsonl
                                       ? "jsonl"
                                       : "pubtator"},
              {"collection", c.inputs.collection},
              {"external_mentions_format",
               c.inputs.external_mentions_format == MentionFormat::kTsv
                   ? "tsv"
                   : "pubtator"}};
    case Stage::kLink:
      return {{"min_length", c.linker.min_length},
              {"case_sensitive", c.linker.case_sensitive},
              {"homonym_rule", c.linker.homonym_rule},
              {"abbreviation_rule", c.linker.abbreviation_rule},
              {"entities", c.vocabulary.entities.size()}};
    case Stage::kExtract: {
      json modes = json::array();
      for (FilterMode m : OpenIEModes(c)) modes.push_back(FilterModeName(m));
      return {{"pathie",
               {{"enabled", c.pathie.enabled},
                {"keep_negations", c.pathie.keep_negations}}},
              {"openie",
               {{"enabled", c.openie.enabled},
                {"filter", FilterModeName(c.openie.filter)},
                {"modes", modes},
                {"keep_negations", c.openie.keep_negations},
                {"entity_sentences_only", c.openie.entity_sentences_only}}},
              {"stopwords", PathString(c.vocabulary.stopwords)},
              {"adverbs", PathString(c.vocabulary.adverbs)}};
    }
    case Stage::kCanonicalize:
      return {{"min_similarity", c.canonical.min_similarity},
              {"min_frequency", c.canonical.min_phrase_frequency},
              {"keep_unmapped", c.canonical.keep_unmapped},
              {"embeddings", PathString(c.embeddings)}};
    case Stage::kConstrain:
      return {{"constraints", PathString(c.vocabulary.constraints)}};
    case Stage::kAnalytics:
      return {{"connectives", PathString(c.connectives)},
              {"prepositions", PathString(c.prepositions)}};
  }
  return json::object();
}

std::vector<std::pair<std::string, fs::path>> StageFiles(
    const PipelineConfig &c, Stage stage) {
  std::vector<std::pair<std::string, fs::path>> files;
  switch (stage) {
    case Stage::kIngest:
      files = {{"documents", c.inputs.documents},
               {"parses", c.inputs.parses},
               {"external_mentions", c.inputs.external_mentions},
               {"openie", c.inputs.openie}};
      break;
    case Stage::kLink:
      for (size_t i = 0; i < c.vocabulary.entities.size(); ++i) {
        files.emplace_back("entities." + std::to_string(i),
                           c.vocabulary.entities[i]);
      }
      files.emplace_back("ignore", c.vocabulary.ignore);
      files.emplace_back("rules", c.vocabulary.rules);
      break;
    case Stage::kExtract:
      files = {{"keywords", c.vocabulary.keywords},
               {"stopwords", c.vocabulary.stopwords},
               {"adverbs", c.vocabulary.adverbs}};
      break;
    case Stage::kCanonicalize:
      files = {{"relations", c.vocabulary.relations},
               {"embeddings", c.embeddings}};
      break;
    case Stage::kConstrain:
      files = {{"constraints", c.vocabulary.constraints}};
      break;
    case Stage::kAnalytics:
      files = {{"connectives", c.connectives},
               {"prepositions", c.prepositions}};
      break;
  }
  return files;
}

std::vector<Stage> Upstream(Stage stage) {
  switch (stage) {
    case Stage::kIngest:
      return {};
    case Stage::kLink:
      return {Stage::kIngest};
    case Stage::kExtract:
      return {Stage::kIngest, Stage::kLink};
    case Stage::kCanonicalize:
      return {Stage::kExtract};
    case Stage::kConstrain:
      return {Stage::kCanonicalize};
    case Stage::kAnalytics:
      return {Stage::kIngest, Stage::kExtract, Stage::kConstrain};
  }
  return {};
}

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

int64_t Size(size_t n) { return static_cast<int64_t>(n); }

}  // namespace

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {}

fs::path Pipeline::StageDir(Stage stage) const {
  return config_.workspace / std::string(StageName(stage));
}

std::string Pipeline::StageDigest(Stage stage) {
  auto cached = digests_.find(stage);
  if (cached != digests_.end()) return cached->second;
  std::string material = "stage\n" + std::string(StageName(stage)) + "\n";
  material += "config\n" + StageConfig(config_, stage).dump() + "\n";
  for (const auto &[role, path] : StageFiles(config_, stage)) {
    material += "file " + role + "\n";
    if (path.empty()) {
      material += "absent\n";
      continue;
    }
    std::string content = ReadFile(path);
    material += std::to_string(content.size()) + "\n" + content + "\n";
  }
  for (Stage up : Upstream(stage)) {
    material += "upstream " + std::string(StageName(up)) + " " +
                StageDigest(up) + "\n";
  }
  std::string digest = Sha256Hex(material);
  digests_[stage] = digest;
  return digest;
}

bool Pipeline::IsUpToDate(Stage stage) {
  std::optional<StageManifest> m =
      ReadManifest(StageDir(stage) / "manifest.json");
  if (!m || m->status != "done" || m->input_digest != StageDigest(stage)) {
    return false;
  }
  for (const OutputRecord &o : m->outputs) {
    fs::path p = StageDir(stage) / o.path;
    if (!fs::is_regular_file(p) || FileSha256(p) != o.sha256) return false;
  }
  return true;
}

RunResult Pipeline::Run(const RunOptions &options) {
  const auto run_start = std::chrono::steady_clock::now();
  RunResult result;
  digests_.clear();
  for (Stage stage : AllStages()) {
    if (stage > options.last) break;
    StageRun sr{stage, false, 0};
    const fs::path dir = StageDir(stage);
    const fs::path manifest_path = dir / "manifest.json";
    StageManifest manifest;
    manifest.stage = std::string(StageName(stage));
    try {
      manifest.input_digest = StageDigest(stage);
      if (IsUpToDate(stage)) {
        result.stages.push_back(sr);
        continue;
      }
      sr.executed = true;
      const auto start = std::chrono::steady_clock::now();
      fs::remove_all(dir);
      fs::create_directories(dir);
      std::vector<std::string> outputs;
      manifest.counts = Execute(stage, &outputs);
      std::sort(outputs.begin(), outputs.end());
      for (const std::string &o : outputs) {
        manifest.outputs.push_back(OutputRecord{o, FileSha256(dir / o)});
      }
      manifest.status = "done";
      sr.seconds = SecondsSince(start);
      manifest.seconds = sr.seconds;
      WriteManifest(manifest, manifest_path);
    } catch (const std::exception &e) {
      sr.executed = true;
      manifest.status = "failed";
      manifest.outputs.clear();
      manifest.error = e.what();
      result.failed = true;
      result.error = std::string(StageName(stage)) + ": " + e.what();
      try {
        fs::create_directories(dir);
        WriteManifest(manifest, manifest_path);
      } catch (const std::exception &) {
        // The workspace itself is unwritable; the error is still returned.
      }
      result.stages.push_back(sr);
      break;
    }
    result.stages.push_back(sr);
  }
  result.total_seconds = SecondsSince(run_start);

  ordered_json run;
  ordered_json stages = ordered_json::array();
  for (const StageRun &sr : result.stages) {
    stages.push_back({{"stage", StageName(sr.stage)},
                      {"executed", sr.executed},
                      {"seconds", sr.seconds}});
  }
  run["stages"] = stages;
  run["total_seconds"] = result.total_seconds;
  run["status"] = result.failed ? "failed" : "done";
  try {
    fs::create_directories(config_.workspace);
    WriteFile(config_.workspace / "run.json", run.dump(2) + "\n");
  } catch (const std::exception &e) {
    if (!result.failed) {
      result.failed = true;
      result.error = e.what();
    }
  }
  return result;
}

std::map<std::string, int64_t> Pipeline::Execute(
    Stage stage, std::vector<std::string> *outputs) {
  switch (stage) {
    case Stage::kIngest:
      return RunIngest(outputs);
    case Stage::kLink:
      return RunLink(outputs);
    case Stage::kExtract:
      return RunExtract(outputs);
    case Stage::kCanonicalize:
      return RunCanonicalize(outputs);
    case Stage::kConstrain:
      return RunConstrain(outputs);
    case Stage::kAnalytics:
      return RunAnalytics(outputs);
  }
  return {};
}

std::map<std::string, int64_t> Pipeline::RunIngest(
    std::vector<std::string> *outputs) {
  const fs::path dir = StageDir(Stage::kIngest);
  const PipelineConfig::Inputs &in = config_.inputs;
  DocumentIndex docs(LoadDocuments(in.documents, in.documents_format,
                                   in.collection));
  std::vector<std::string> warnings;

  ParseLoadResult parses;
  if (!in.parses.empty()) {
    parses = LoadParses(in.parses, OnInvalid::kSkip);
    AlignParses(docs, &parses, OnInvalid::kSkip);
  }
  for (const std::string &e : parses.errors) warnings.push_back("parse: " + e);

  std::vector<EntityMention> external;
  if (!in.external_mentions.empty()) {
    external = LoadExternalMentions(in.external_mentions,
                                    in.external_mentions_format, docs);
  }

  OpenIELoadResult triples;
  if (!in.openie.empty()) triples = LoadOpenIETsv(in.openie);
  for (const std::string &w : triples.warnings) {
    warnings.push_back("openie: " + w);
  }

  WriteDocuments(docs.documents(), dir / "documents.jsonl",
                 DocumentFormat::kJsonl);
  WriteParses(parses.parses, dir / "parses.conllu");
  WriteMentions(external, dir / "external_mentions.tsv");
  WriteFile(dir / "triples.tsv", FormatOpenIETsv(triples.triples));
  WriteFile(dir / "warnings.txt",
            warnings.empty() ? "" : Join(warnings, "\n") + "\n");
  *outputs = {"documents.jsonl", "parses.conllu", "external_mentions.tsv",
              "triples.tsv", "warnings.txt"};
  return {{"documents", Size(docs.size())},
          {"sentences", Size(parses.parses.size())},
          {"rejected_sentences", Size(parses.errors.size())},
          {"external_mentions", Size(external.size())},
          {"triples", Size(triples.triples.size())},
          {"triple_warnings", Size(triples.warnings.size())}};
}

std::map<std::string, int64_t> Pipeline::RunLink(
    std::vector<std::string> *outputs) {
  const fs::path in_dir = StageDir(Stage::kIngest);
  const fs::path dir = StageDir(Stage::kLink);
  DocumentIndex docs(
      LoadDocuments(in_dir / "documents.jsonl", DocumentFormat::kJsonl));
  std::vector<EntityMention> external =
      LoadMentions(in_dir / "external_mentions.tsv", &docs);

  std::vector<EntityVocabulary> vocabs;
  for (const fs::path &p : config_.vocabulary.entities) {
    vocabs.push_back(LoadEntityVocab(p));
  }
  EntityVocabulary vocab = MergeEntityVocabs(vocabs);
  if (!config_.vocabulary.rules.empty()) {
    vocab = FilterEntityVocab(vocab, LoadFilterRules(config_.vocabulary.rules));
  }
  IgnoreList ignore;
  if (!config_.vocabulary.ignore.empty()) {
    ignore = LoadIgnoreList(config_.vocabulary.ignore);
  }
  Matcher matcher = Matcher::Build(vocab, ignore, config_.linker);

  const std::vector<Document> &all = docs.documents();
  std::vector<std::vector<EntityMention>> per_doc(all.size());
  ParallelFor(all.size(), config_.workers, [&](size_t i) {
    per_doc[i] = LinkContent(all[i].id, *docs.Content(all[i].id), matcher);
  });
  std::vector<EntityMention> mentions;
  int64_t dictionary = 0;
  for (auto &v : per_doc) {
    dictionary += Size(v.size());
    mentions.insert(mentions.end(), v.begin(), v.end());
  }
  mentions.insert(mentions.end(), external.begin(), external.end());
  std::sort(mentions.begin(), mentions.end());
  mentions.erase(std::unique(mentions.begin(), mentions.end()),
                 mentions.end());

  WriteMentions(mentions, dir / "mentions.tsv");
  WriteFile(dir / "mention_frequencies.tsv",
            FormatMentionFrequencies(MentionFrequencyReport(mentions)));
  WriteEntityVocab(vocab, dir / "entities.tsv");
  *outputs = {"mentions.tsv", "mention_frequencies.tsv", "entities.tsv"};
  return {{"vocabulary_entries", Size(vocab.size())},
          {"patterns", Size(matcher.patterns().size())},
          {"dictionary_mentions", dictionary},
          {"external_mentions", Size(external.size())},
          {"mentions", Size(mentions.size())}};
}

std::map<std::string, int64_t> Pipeline::RunExtract(
    std::vector<std::string> *outputs) {
  const fs::path in_dir = StageDir(Stage::kIngest);
  const fs::path dir = StageDir(Stage::kExtract);
  std::vector<SentenceParse> parses =
      LoadParses(in_dir / "parses.conllu", OnInvalid::kAbort).parses;
  std::vector<EntityMention> mentions =
      LoadMentions(StageDir(Stage::kLink) / "mentions.tsv");
  std::map<std::string, int64_t> counts;

  std::vector<RawStatement> pathie;
  if (config_.pathie.enabled) {
    KeywordSet keywords;
    if (!config_.vocabulary.keywords.empty()) {
      keywords = LoadKeywords(config_.vocabulary.keywords);
    }
    std::map<std::string, std::vector<EntityMention>> by_doc;
    for (const EntityMention &m : mentions) by_doc[m.doc_id].push_back(m);
    const std::vector<EntityMention> none;
    PathIEOptions options{config_.pathie.keep_negations};
    std::vector<std::vector<RawStatement>> per_sentence(parses.size());
    ParallelFor(parses.size(), config_.workers, [&](size_t i) {
      auto it = by_doc.find(parses[i].doc_id);
      if (it == by_doc.end()) return;
      per_sentence[i] = ExtractPathIE(
          parses[i], MentionsInSentence(parses[i], it->second), keywords,
          options);
    });
    for (auto &v : per_sentence) pathie.insert(pathie.end(), v.begin(), v.end());
  }
  WriteStatements(pathie, dir / "pathie.tsv");
  outputs->push_back("pathie.tsv");
  counts["pathie_statements"] = Size(pathie.size());

  std::vector<RawStatement> openie;
  if (config_.openie.enabled) {
    std::vector<OpenIETriple> triples =
        LoadOpenIETsv(in_dir / "triples.tsv").triples;
    std::vector<bool> keep(triples.size(), true);
    if (config_.openie.entity_sentences_only) {
      std::vector<OpenIETriple> selected = SelectTriplesInSentences(
          triples, parses, RestrictToEntitySentences(parses, mentions));
      // Triples are matched by value so that source indices keep pointing
      // into the full triple list.
      std::multiset<std::tuple<std::string, std::string, std::string,
                               std::string, std::string>>
          wanted;
      for (const OpenIETriple &t : selected) {
        wanted.emplace(t.doc_id, t.sentence, t.subject, t.predicate, t.object);
      }
      for (size_t i = 0; i < triples.size(); ++i) {
        const OpenIETriple &t = triples[i];
        keep[i] = wanted.count({t.doc_id, t.sentence, t.subject, t.predicate,
                                t.object}) > 0;
      }
      counts["openie_selected_triples"] =
          std::count(keep.begin(), keep.end(), true);
    }
    PredicateLexicon lexicon = LoadPredicateLexicon(
        config_.vocabulary.stopwords, config_.vocabulary.adverbs);
    EntityFilterOptions options{config_.openie.keep_negations, &lexicon};
    for (FilterMode mode : OpenIEModes(config_)) {
      std::vector<RawStatement> statements;
      for (RawStatement &s :
           ApplyEntityFilter(triples, mentions, mode, options)) {
        if (keep[s.source]) statements.push_back(std::move(s));
      }
      AssignSentenceIndices(parses, &statements);
      FilterCount fc = CountFilterResult(statements);
      const std::string name(FilterModeName(mode));
      counts["openie_" + name + "_statements"] = fc.statements;
      counts["openie_" + name + "_triples"] = fc.source_triples;
      WriteStatements(statements, dir / FilterFileName(mode));
      outputs->push_back(FilterFileName(mode));
      if (mode == config_.openie.filter) openie = std::move(statements);
    }
  }

  std::vector<RawStatement> all = pathie;
  all.insert(all.end(), openie.begin(), openie.end());
  WriteStatements(all, dir / "statements.tsv");
  outputs->push_back("statements.tsv");
  counts["statements"] = Size(all.size());
  return counts;
}

std::map<std::string, int64_t> Pipeline::RunCanonicalize(
    std::vector<std::string> *outputs) {
  const fs::path dir = StageDir(Stage::kCanonicalize);
  std::vector<RawStatement> statements =
      LoadStatements(StageDir(Stage::kExtract) / "statements.tsv");
  RelationVocabulary relations =
      LoadRelationVocab(config_.vocabulary.relations);
  EmbeddingModel model;
  if (!config_.embeddings.empty()) model = LoadEmbeddings(config_.embeddings);

  std::vector<CanonicalStatement> canonical =
      Canonicalize(statements, relations, model, config_.canonical);
  WriteCanonicalStatements(canonical, dir / "canonical.tsv");
  WriteFile(dir / "predicate_statistics.tsv",
            FormatPredicateStatistics(ExportPredicateStatistics(statements)));
  *outputs = {"canonical.tsv", "predicate_statistics.tsv"};

  std::map<std::string, int64_t> counts = {
      {"statements_in", Size(statements.size())},
      {"canonical", Size(canonical.size())},
      {"exact_synonym", 0},
      {"embedding", 0},
      {"unmapped", 0}};
  for (const CanonicalStatement &c : canonical) {
    ++counts[std::string(MappingName(c.mapping))];
  }
  return counts;
}

std::map<std::string, int64_t> Pipeline::RunConstrain(
    std::vector<std::string> *outputs) {
  const fs::path dir = StageDir(Stage::kConstrain);
  std::vector<CanonicalStatement> canonical = LoadCanonicalStatements(
      StageDir(Stage::kCanonicalize) / "canonical.tsv");
  TypeConstraintSet constraints;
  if (!config_.vocabulary.constraints.empty()) {
    constraints = LoadTypeConstraints(config_.vocabulary.constraints);
  }
  std::vector<CanonicalStatement> kept =
      ApplyRelationTypeConstraints(canonical, constraints);
  WriteCanonicalStatements(kept, dir / "constrained.tsv");
  *outputs = {"constrained.tsv"};
  return {{"statements_in", Size(canonical.size())},
          {"kept", Size(kept.size())},
          {"removed", Size(canonical.size() - kept.size())}};
}

std::map<std::string, int64_t> Pipeline::RunAnalytics(
    std::vector<std::string> *outputs) {
  const fs::path dir = StageDir(Stage::kAnalytics);
  const fs::path in_dir = StageDir(Stage::kIngest);
  const fs::path ex_dir = StageDir(Stage::kExtract);
  std::vector<SentenceParse> parses =
      LoadParses(in_dir / "parses.conllu", OnInvalid::kAbort).parses;
  std::vector<OpenIETriple> triples =
      LoadOpenIETsv(in_dir / "triples.tsv").triples;
  ComplexityClassifier classifier =
      ComplexityClassifier::Load(config_.connectives, config_.prepositions);
  ComplexityReport complexity =
      BuildComplexityReport(triples, parses, classifier);

  ExtractionStatistics stats;
  stats.pathie_statements = Size(LoadStatements(ex_dir / "pathie.tsv").size());
  if (config_.openie.enabled) {
    for (FilterMode mode : OpenIEModes(config_)) {
      stats.openie[std::string(FilterModeName(mode))] =
          CountFilterResult(LoadStatements(ex_dir / FilterFileName(mode)));
    }
  }
  stats.canonical_statements = Size(
      LoadCanonicalStatements(StageDir(Stage::kCanonicalize) / "canonical.tsv")
          .size());
  std::vector<CanonicalStatement> constrained = LoadCanonicalStatements(
      StageDir(Stage::kConstrain) / "constrained.tsv");
  stats.constrained_statements = Size(constrained.size());
  for (const CanonicalStatement &c : constrained) {
    ++stats.relations[c.relation.empty() ? "(unmapped)" : c.relation];
  }

  auto extraction_rows = ExtractionRows(stats);
  auto complexity_rows = ComplexityRows(complexity);
  WriteFile(dir / "extraction.tsv", FormatTsv(extraction_rows));
  WriteFile(dir / "extraction.txt", FormatAlignedTable(extraction_rows));
  WriteFile(dir / "complexity.tsv", FormatTsv(complexity_rows));
  WriteFile(dir / "complexity.txt", FormatAlignedTable(complexity_rows));
  *outputs = {"extraction.tsv", "extraction.txt", "complexity.tsv",
              "complexity.txt"};
  return {{"sentences", complexity.sentences_total},
          {"sentences_complex", complexity.sentences_complex},
          {"subjects", complexity.subjects_total},
          {"subjects_complex", complexity.subjects_complex},
          {"objects", complexity.objects_total},
          {"objects_complex", complexity.objects_complex}};
}

WorkspaceReport BuildReport(const fs::path &workspace) {
  std::vector<std::pair<Stage, StageManifest>> manifests;
  for (Stage stage : AllStages()) {
    std::optional<StageManifest> m = ReadManifest(
        workspace / std::string(StageName(stage)) / "manifest.json");
    if (m) manifests.emplace_back(stage, std::move(*m));
  }
  bool any_done = std::any_of(manifests.begin(), manifests.end(),
                              [](const auto &m) { return m.second.status == "done"; });
  if (!any_done) {
    throw Error("no completed stage in workspace " + workspace.string());
  }

  std::map<std::string, std::pair<bool, double>> last_run;
  double total = 0;
  if (fs::is_regular_file(workspace / "run.json")) {
    json run = json::parse(ReadFile(workspace / "run.json"));
    total = run.value("total_seconds", 0.0);
    for (const json &s : run.at("stages")) {
      last_run[s.at("stage").get<std::string>()] = {
          s.at("executed").get<bool>(), s.at("seconds").get<double>()};
    }
  }

  std::vector<std::vector<std::string>> stage_rows = {
      {"stage", "status", "run_seconds", "stage_seconds", "counts"}};
  std::vector<std::vector<std::string>> tsv = {
      {"section", "name", "key", "value"}};
  for (const auto &[stage, m] : manifests) {
    std::vector<std::string> counts;
    for (const auto &[k, v] : m.counts) {
      counts.push_back(k + "=" + std::to_string(v));
      tsv.push_back({"count", m.stage, k, std::to_string(v)});
    }
    auto lr = last_run.find(m.stage);
    double run_seconds = lr == last_run.end() ? 0 : lr->second.second;
    char run_buf[32];
    char stage_buf[32];
    std::snprintf(run_buf, sizeof(run_buf), "%.3f", run_seconds);
    std::snprintf(stage_buf, sizeof(stage_buf), "%.3f", m.seconds);
    stage_rows.push_back(
        {m.stage, m.status, run_buf, stage_buf, Join(counts, " ")});
    tsv.push_back({"stage", m.stage, "status", m.status});
    tsv.push_back({"stage", m.stage, "run_seconds", FormatDouble(run_seconds)});
    tsv.push_back({"stage", m.stage, "stage_seconds", FormatDouble(m.seconds)});
  }
  tsv.push_back({"run", "total", "seconds", FormatDouble(total)});

  std::string text = "Stages\n\n" + FormatAlignedTable(stage_rows);
  char total_buf[32];
  std::snprintf(total_buf, sizeof(total_buf), "%.3f", total);
  text += "\ntotal wall time of last run: " + std::string(total_buf) + " s\n";

  const fs::path analytics = workspace / "analytics";
  if (fs::is_regular_file(analytics / "extraction.txt")) {
    text += "\nExtractions\n\n" + ReadFile(analytics / "extraction.txt");
  }
  if (fs::is_regular_file(analytics / "complexity.txt")) {
    text += "\nComplexity\n\n" + ReadFile(analytics / "complexity.txt");
  }
  for (const char *name : {"extraction.tsv", "complexity.tsv"}) {
    if (!fs::is_regular_file(analytics / name)) continue;
    std::vector<std::string> lines = SplitLines(ReadFile(analytics / name));
    if (lines.empty()) continue;
    const std::string file(name);
    const std::string section = file.substr(0, file.find('.'));
    const std::vector<std::string> header = Split(lines[0], '\t');
    for (size_t i = 1; i < lines.size(); ++i) {
      std::vector<std::string> f = Split(lines[i], '\t');
      if (f.size() != header.size()) continue;
      if (f.size() == 3) {
        tsv.push_back({section, f[0], f[1], f[2]});
        continue;
      }
      for (size_t k = 1; k < f.size(); ++k) {
        tsv.push_back({section, f[0], header[k], f[k]});
      }
    }
  }

  const fs::path predicates =
      workspace / "canonicalize" / "predicate_statistics.tsv";
  if (fs::is_regular_file(predicates)) {
    std::vector<std::vector<std::string>> rows = {{"predicate", "count"}};
    std::vector<std::string> lines = SplitLines(ReadFile(predicates));
    for (size_t i = 1; i < lines.size() && i <= 20; ++i) {
      std::vector<std::string> f = Split(lines[i], '\t');
      if (f.size() < 2) continue;
      rows.push_back({UnescapeField(f[0]), f[1]});
      tsv.push_back({"predicate", UnescapeField(f[0]), "count", f[1]});
    }
    text += "\nMost frequent predicates\n\n" + FormatAlignedTable(rows);
  }
  return WorkspaceReport{text, FormatTsv(tsv)};
}

}  // namespace kgx
