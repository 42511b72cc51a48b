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

#include "kgx/vocabulary.h"

#include <algorithm>
#include <tuple>

#include "kgx/text.h"

namespace kgx {

namespace {

bool IsCommentOrBlank(std::string_view line) {
  std::string_view t = Trim(line);
  return t.empty() || t[0] == '#';
}

// Splits a ';' list, trimming items and dropping empty ones.
std::vector<std::string> SplitList(std::string_view s) {
  std::vector<std::string> out;
  for (const std::string &item : Split(s, ';')) {
    std::string_view t = Trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

void CheckListItem(std::string_view item) {
  if (item.find_first_of(";\t\n\r") != std::string_view::npos) {
    throw Error("value cannot be written to a ';' list: " + std::string(item));
  }
}

bool KeyLess(const EntityEntry &a, const EntityEntry &b) {
  return std::tie(a.entity_id, a.entity_type) <
         std::tie(b.entity_id, b.entity_type);
}

}  // namespace

// --- EntityVocabulary --------------------------------------------------------

void EntityVocabulary::Add(EntityEntry entry) {
  if (entry.synonyms.empty()) {
    throw Error("entity " + entry.entity_id + " has no synonyms");
  }
  for (const std::string &s : entry.synonyms) {
    if (Trim(s).empty()) {
      throw Error("entity " + entry.entity_id + " has an empty synonym");
    }
  }
  if (entry.preferred_label.empty()) {
    entry.preferred_label = *entry.synonyms.begin();
  }
  entry.synonyms.insert(entry.preferred_label);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), entry, KeyLess);
  if (it != entries_.end() && !KeyLess(entry, *it)) {
    throw Error("duplicate entity (" + entry.entity_id + ", " +
                entry.entity_type + ")");
  }
  entries_.insert(it, std::move(entry));
}

void EntityVocabulary::Merge(const EntityEntry &entry) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), entry, KeyLess);
  if (it != entries_.end() && !KeyLess(entry, *it)) {
    it->synonyms.insert(entry.synonyms.begin(), entry.synonyms.end());
    return;
  }
  Add(entry);
}

const EntityEntry *EntityVocabulary::Find(std::string_view id,
                                          std::string_view type) const {
  for (const EntityEntry &e : entries_) {
    if (e.entity_id == id && e.entity_type == type) return &e;
  }
  return nullptr;
}

EntityVocabulary ParseEntityVocab(std::string_view content,
                                  std::string_view source) {
  EntityVocabulary vocab;
  std::vector<std::string> lines = SplitLines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (IsCommentOrBlank(lines[i])) continue;
    std::string where = std::string(source) + ":" + std::to_string(i + 1);
    std::vector<std::string> f = Split(lines[i], '\t');
    if (i == 0 && f.size() == 3 && f[0] == "entity_id") continue;
    if (f.size() != 3) {
      throw Error(where + ": expected 3 columns, found " +
                  std::to_string(f.size()));
    }
    EntityEntry entry;
    entry.entity_id = std::string(Trim(f[0]));
    entry.entity_type = std::string(Trim(f[1]));
    if (entry.entity_id.empty() || entry.entity_type.empty()) {
      throw Error(where + ": empty entity id or type");
    }
    std::vector<std::string> synonyms = SplitList(f[2]);
    if (synonyms.empty()) throw Error(where + ": empty synonym list");
    entry.preferred_label = synonyms.front();
    entry.synonyms.insert(synonyms.begin(), synonyms.end());
    try {
      vocab.Add(std::move(entry));
    } catch (const Error &e) {
      throw Error(where + ": " + e.what());
    }
  }
  return vocab;
}

EntityVocabulary LoadEntityVocab(const std::filesystem::path &path) {
  return ParseEntityVocab(ReadFile(path), path.string());
}

EntityVocabulary MergeEntityVocabs(const std::vector<EntityVocabulary> &vocabs) {
  EntityVocabulary merged;
  for (const EntityVocabulary &v : vocabs) {
    for (const EntityEntry &e : v.entries()) merged.Merge(e);
  }
  return merged;
}

std::string FormatEntityVocab(const EntityVocabulary &vocab) {
  std::string out;
  for (const EntityEntry &e : vocab.entries()) {
    for (const std::string *f : {&e.entity_id, &e.entity_type}) {
      if (f->find_first_of("\t\n\r") != std::string::npos) {
        throw Error("entity field contains tab or newline: " + *f);
      }
    }
    std::vector<std::string> synonyms = {e.preferred_label};
    for (const std::string &s : e.synonyms) {
      CheckListItem(s);
      if (s != e.preferred_label) synonyms.push_back(s);
    }
    out += e.entity_id + "\t" + e.entity_type + "\t" + Join(synonyms, ";") +
           "\n";
  }
  return out;
}

void WriteEntityVocab(const EntityVocabulary &vocab,
                      const std::filesystem::path &path) {
  WriteFile(path, FormatEntityVocab(vocab));
}

std::vector<VocabFilterRule> LoadFilterRules(const std::filesystem::path &path) {
  std::vector<VocabFilterRule> rules;
  std::vector<std::string> lines = SplitLines(ReadFile(path));
  for (size_t i = 0; i < lines.size(); ++i) {
    if (IsCommentOrBlank(lines[i])) continue;
    std::vector<std::string> f = Split(lines[i], '\t');
    if (f.size() != 2 || Trim(f[1]).empty()) {
      throw Error(path.string() + ":" + std::to_string(i + 1) +
                  ": expected entity_type TAB required_substring");
    }
    rules.push_back({std::string(Trim(f[0])), std::string(Trim(f[1]))});
  }
  return rules;
}

EntityVocabulary FilterEntityVocab(const EntityVocabulary &vocab,
                                   const std::vector<VocabFilterRule> &rules) {
  EntityVocabulary out;
  for (const EntityEntry &e : vocab.entries()) {
    std::string label = CaseFold(e.preferred_label);
    bool keep = true;
    for (const VocabFilterRule &r : rules) {
      if (r.entity_type != e.entity_type) continue;
      if (label.find(CaseFold(r.required_substring)) == std::string::npos) {
        keep = false;
        break;
      }
    }
    if (keep) out.Add(e);
  }
  return out;
}

// --- RelationVocabulary ------------------------------------------------------

void RelationVocabulary::Add(std::string_view relation,
                             const std::vector<std::string> &synonyms) {
  std::string name = NormalizePhrase(relation);
  if (name.empty()) throw Error("empty relation name");
  std::vector<std::string> all = {name};
  for (const std::string &s : synonyms) {
    std::string n = NormalizePhrase(s);
    if (!n.empty()) all.push_back(std::move(n));
  }
  for (const std::string &s : all) {
    auto it = owner_.find(s);
    if (it != owner_.end() && it->second != name) {
      throw Error("synonym '" + s + "' claimed by relations '" + it->second +
                  "' and '" + name + "'");
    }
  }
  std::set<std::string> &set = relations_[name];
  for (std::string &s : all) {
    owner_[s] = name;
    set.insert(std::move(s));
  }
}

std::optional<std::string> RelationVocabulary::Lookup(
    std::string_view phrase) const {
  auto it = owner_.find(NormalizePhrase(phrase));
  if (it == owner_.end()) return std::nullopt;
  return it->second;
}

RelationVocabulary ParseRelationVocab(std::string_view content,
                                      std::string_view source) {
  RelationVocabulary vocab;
  std::vector<std::string> lines = SplitLines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (IsCommentOrBlank(lines[i])) continue;
    std::string where = std::string(source) + ":" + std::to_string(i + 1);
    std::vector<std::string> f = Split(lines[i], '\t');
    if (f.size() != 2) {
      throw Error(where + ": expected relation TAB synonyms");
    }
    try {
      vocab.Add(f[0], SplitList(f[1]));
    } catch (const Error &e) {
      throw Error(where + ": " + e.what());
    }
  }
  return vocab;
}

RelationVocabulary LoadRelationVocab(const std::filesystem::path &path) {
  return ParseRelationVocab(ReadFile(path), path.string());
}

std::string FormatRelationVocab(const RelationVocabulary &vocab) {
  std::string out;
  for (const auto &[name, synonyms] : vocab.relations()) {
    CheckListItem(name);
    std::vector<std::string> list(synonyms.begin(), synonyms.end());
    for (const std::string &s : list) CheckListItem(s);
    out += name + "\t" + Join(list, ";") + "\n";
  }
  return out;
}

// --- IgnoreList --------------------------------------------------------------

IgnoreList::IgnoreList(const std::vector<std::string> &terms) {
  for (const std::string &t : terms) {
    std::string n = NormalizePhrase(t);
    if (!n.empty()) terms_.insert(std::move(n));
  }
}

bool IgnoreList::Contains(std::string_view term) const {
  return terms_.count(NormalizePhrase(term)) > 0;
}

IgnoreList ParseIgnoreList(std::string_view content) {
  std::vector<std::string> terms;
  for (const std::string &line : SplitLines(content)) {
    if (IsCommentOrBlank(line)) continue;
    terms.push_back(line);
  }
  return IgnoreList(terms);
}

IgnoreList LoadIgnoreList(const std::filesystem::path &path) {
  return ParseIgnoreList(ReadFile(path));
}

std::string FormatIgnoreList(const IgnoreList &list) {
  std::string out;
  for (const std::string &t : list.terms()) out += t + "\n";
  return out;
}

// --- TypeConstraintSet -------------------------------------------------------

bool TypeConstraint::Allows(std::string_view subject_type,
                            std::string_view object_type) const {
  return subject_types.count(std::string(subject_type)) > 0 &&
         object_types.count(std::string(object_type)) > 0;
}

void TypeConstraintSet::Add(std::string_view relation,
                            const std::set<std::string> &subjects,
                            const std::set<std::string> &objects) {
  std::string name = NormalizePhrase(relation);
  if (name.empty()) throw Error("empty relation name in type constraint");
  if (subjects.empty() || objects.empty()) {
    throw Error("relation '" + name + "' has an empty type set");
  }
  TypeConstraint &c = constraints_[name];
  c.subject_types.insert(subjects.begin(), subjects.end());
  c.object_types.insert(objects.begin(), objects.end());
}

const TypeConstraint *TypeConstraintSet::Find(std::string_view relation) const {
  auto it = constraints_.find(NormalizePhrase(relation));
  return it == constraints_.end() ? nullptr : &it->second;
}

TypeConstraintSet ParseTypeConstraints(std::string_view content,
                                       std::string_view source) {
  TypeConstraintSet set;
  std::vector<std::string> lines = SplitLines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (IsCommentOrBlank(lines[i])) continue;
    std::string where = std::string(source) + ":" + std::to_string(i + 1);
    std::vector<std::string> f = Split(lines[i], '\t');
    if (f.size() != 3) {
      throw Error(where + ": expected relation TAB subject types TAB object "
                          "types");
    }
    std::vector<std::string> s = SplitList(f[1]);
    std::vector<std::string> o = SplitList(f[2]);
    try {
      set.Add(f[0], {s.begin(), s.end()}, {o.begin(), o.end()});
    } catch (const Error &e) {
      throw Error(where + ": " + e.what());
    }
  }
  return set;
}

TypeConstraintSet LoadTypeConstraints(const std::filesystem::path &path) {
  return ParseTypeConstraints(ReadFile(path), path.string());
}

std::string FormatTypeConstraints(const TypeConstraintSet &constraints) {
  std::string out;
  for (const auto &[name, c] : constraints.constraints()) {
    CheckListItem(name);
    std::vector<std::string> s(c.subject_types.begin(), c.subject_types.end());
    std::vector<std::string> o(c.object_types.begin(), c.object_types.end());
    for (const std::string &t : s) CheckListItem(t);
    for (const std::string &t : o) CheckListItem(t);
    out += name + "\t" + Join(s, ";") + "\t" + Join(o, ";") + "\n";
  }
  return out;
}

}  // namespace kgx
