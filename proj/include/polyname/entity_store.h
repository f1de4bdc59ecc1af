// Copyright 2026 The Polyname Authors
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

#ifndef POLYNAME_ENTITY_STORE_H_
#define POLYNAME_ENTITY_STORE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "polyname/entity_record.h"

namespace polyname {

// P279 edges from a class to its direct superclasses. May contain cycles.
class ClassGraph {
 public:
  void AddEdge(Qid child, Qid parent);
  void AddRecord(const EntityRecord &record);

  const std::map<Qid, std::set<Qid>> &edges() const { return parents_; }
  size_t edge_count() const { return edge_count_; }

  // Every qid that reaches `root` along P279 edges, plus `root` itself.
  // Terminates on cyclic graphs.
  std::unordered_set<Qid> Descendants(Qid root) const;

  bool operator==(const ClassGraph &other) const { return parents_ == other.parents_; }

 private:
  std::map<Qid, std::set<Qid>> parents_;
  std::unordered_map<Qid, std::vector<Qid>> children_;
  size_t edge_count_ = 0;
};

// Write-once keyed record access. Concurrent readers are safe.
class EntityStore {
 public:
  virtual ~EntityStore() = default;

  virtual size_t size() const = 0;
  virtual std::optional<EntityRecord> Get(Qid qid) const = 0;
  // Visits records in ascending qid order.
  virtual void ForEach(const std::function<void(const EntityRecord &)> &fn) const = 0;
  virtual const ClassGraph &class_graph() const = 0;
};

// Builds a store from records. Identical duplicates collapse; a duplicate
// qid with different content throws IntegrityError.
class InMemoryStore : public EntityStore {
 public:
  void Add(EntityRecord record);

  size_t size() const override { return records_.size(); }
  std::optional<EntityRecord> Get(Qid qid) const override;
  void ForEach(const std::function<void(const EntityRecord &)> &fn) const override;
  const ClassGraph &class_graph() const override { return graph_; }

 private:
  std::map<Qid, EntityRecord> records_;
  ClassGraph graph_;
};

// Directory layout:
//   records.jsonl   canonical records in first-seen order
//   records.idx     qid<TAB>byte offset<TAB>byte length, ascending qid
//   classgraph.tsv  child<TAB>parent, ascending
class FileStore : public EntityStore {
 public:
  static constexpr const char *kRecordsFile = "records.jsonl";
  static constexpr const char *kIndexFile = "records.idx";
  static constexpr const char *kClassGraphFile = "classgraph.tsv";

  // Opens an existing store. Throws IoError if files are missing.
  static std::unique_ptr<FileStore> Open(const std::filesystem::path &dir);

  size_t size() const override { return index_.size(); }
  std::optional<EntityRecord> Get(Qid qid) const override;
  void ForEach(const std::function<void(const EntityRecord &)> &fn) const override;
  const ClassGraph &class_graph() const override { return graph_; }

  const std::filesystem::path &dir() const { return dir_; }

 private:
  struct Entry {
    uint64_t offset;
    uint64_t length;
  };

  std::string ReadLine(const Entry &entry) const;

  std::filesystem::path dir_;
  std::map<Qid, Entry> index_;
  ClassGraph graph_;
};

struct StoreBuildStats {
  uint64_t records_in = 0;
  uint64_t duplicates = 0;
  uint64_t stored = 0;
  uint64_t class_edges = 0;
};

// Streams records into a FileStore at `dir`. Keeps only the qid index in
// memory. Rebuilding from identical input yields identical files.
class StoreBuilder {
 public:
  explicit StoreBuilder(std::filesystem::path dir);
  ~StoreBuilder();

  void Add(const EntityRecord &record);
  // Writes the index and class graph and returns the opened store.
  std::unique_ptr<FileStore> Finish();

  const StoreBuildStats &stats() const { return stats_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  StoreBuildStats stats_;
};

std::unique_ptr<FileStore> BuildStore(const std::vector<EntityRecord> &records,
                                      const std::filesystem::path &dir);

}  // namespace polyname

#endif  // POLYNAME_ENTITY_STORE_H_
