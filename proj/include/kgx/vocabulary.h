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

// Curated domain knowledge: entity vocabularies, relation vocabularies,
// ignore lists and relation type constraints.
//
// File formats (tab separated, '#' starts a comment line):
//   entity vocabulary   entity_id  entity_type  syn1;syn2;...
//   relation vocabulary relation   syn1;syn2;...
//   type constraints    relation   subj_type1;...  obj_type1;...
//   ignore list         one term per line
//   filter rules        entity_type  required_substring

#ifndef KGX_VOCABULARY_H_
#define KGX_VOCABULARY_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kgx {

struct EntityEntry {
  std::string entity_id;
  std::string entity_type;
  std::string preferred_label;
  std::set<std::string> synonyms;  // includes preferred_label

  bool operator==(const EntityEntry &) const = default;
};

// Entries unique by (entity_id, entity_type), kept sorted by that key.
class EntityVocabulary {
 public:
  EntityVocabulary() = default;

  // Throws if (entity_id, entity_type) already exists.
  void Add(EntityEntry entry);

  // Adds the entry, or unions its synonyms into an existing one.
  void Merge(const EntityEntry &entry);

  const std::vector<EntityEntry> &entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const EntityEntry *Find(std::string_view id, std::string_view type) const;

  bool operator==(const EntityVocabulary &) const = default;

 private:
  std::vector<EntityEntry> entries_;
};

EntityVocabulary ParseEntityVocab(std::string_view content,
                                  std::string_view source);
EntityVocabulary LoadEntityVocab(const std::filesystem::path &path);

// Union of several vocabularies; entries sharing (id, type) merge their
// synonyms and keep the first preferred label.
EntityVocabulary MergeEntityVocabs(const std::vector<EntityVocabulary> &vocabs);

std::string FormatEntityVocab(const EntityVocabulary &vocab);
void WriteEntityVocab(const EntityVocabulary &vocab,
                      const std::filesystem::path &path);

struct VocabFilterRule {
  std::string entity_type;
  std::string required_substring;
};

std::vector<VocabFilterRule> LoadFilterRules(const std::filesystem::path &path);

// Entries of a ruled type survive only if their preferred label contains
// every required substring of that type, case-insensitively. Other types
// pass through.
EntityVocabulary FilterEntityVocab(const EntityVocabulary &vocab,
                                   const std::vector<VocabFilterRule> &rules);

// Relation names and synonyms are normalized (case-folded, whitespace
// collapsed). Each relation's own name is one of its synonyms.
class RelationVocabulary {
 public:
  RelationVocabulary() = default;

  // Throws if a synonym already belongs to another relation.
  void Add(std::string_view relation, const std::vector<std::string> &synonyms);

  const std::map<std::string, std::set<std::string>> &relations() const {
    return relations_;
  }
  // Relation owning the normalized phrase, if any.
  std::optional<std::string> Lookup(std::string_view phrase) const;
  size_t synonym_count() const { return owner_.size(); }
  const std::map<std::string, std::string> &synonyms() const { return owner_; }

  bool operator==(const RelationVocabulary &) const = default;

 private:
  std::map<std::string, std::set<std::string>> relations_;
  std::map<std::string, std::string> owner_;
};

RelationVocabulary ParseRelationVocab(std::string_view content,
                                      std::string_view source);
RelationVocabulary LoadRelationVocab(const std::filesystem::path &path);
std::string FormatRelationVocab(const RelationVocabulary &vocab);

// Case-folded, whitespace-collapsed, deduplicated terms.
class IgnoreList {
 public:
  IgnoreList() = default;
  explicit IgnoreList(const std::vector<std::string> &terms);

  bool Contains(std::string_view term) const;
  const std::set<std::string> &terms() const { return terms_; }

  bool operator==(const IgnoreList &) const = default;

 private:
  std::set<std::string> terms_;
};

IgnoreList ParseIgnoreList(std::string_view content);
IgnoreList LoadIgnoreList(const std::filesystem::path &path);
std::string FormatIgnoreList(const IgnoreList &list);

struct TypeConstraint {
  std::set<std::string> subject_types;
  std::set<std::string> object_types;

  bool Allows(std::string_view subject_type,
              std::string_view object_type) const;
  bool operator==(const TypeConstraint &) const = default;
};

// Keyed by normalized relation name.
class TypeConstraintSet {
 public:
  TypeConstraintSet() = default;

  // Throws on empty type sets. Repeated relations union their types.
  void Add(std::string_view relation, const std::set<std::string> &subjects,
           const std::set<std::string> &objects);

  const TypeConstraint *Find(std::string_view relation) const;
  const std::map<std::string, TypeConstraint> &constraints() const {
    return constraints_;
  }

  bool operator==(const TypeConstraintSet &) const = default;

 private:
  std::map<std::string, TypeConstraint> constraints_;
};

TypeConstraintSet ParseTypeConstraints(std::string_view content,
                                       std::string_view source);
TypeConstraintSet LoadTypeConstraints(const std::filesystem::path &path);
std::string FormatTypeConstraints(const TypeConstraintSet &constraints);

}  // namespace kgx

#endif  // KGX_VOCABULARY_H_
