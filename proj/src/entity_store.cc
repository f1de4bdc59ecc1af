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

#include "polyname/entity_store.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "polyname/dump_ingest.h"
#include "polyname/error.h"

namespace polyname {

namespace fs = std::filesystem;

void ClassGraph::AddEdge(Qid child, Qid parent) {
  if (parents_[child].insert(parent).second) {
    children_[parent].push_back(child);
    ++edge_count_;
  }
}

void ClassGraph::AddRecord(const EntityRecord &record) {
  for (Qid parent : record.subclass_of) AddEdge(record.qid, parent);
}

std::unordered_set<Qid> ClassGraph::Descendants(Qid root) const {
  std::unordered_set<Qid> visited{root};
  std::deque<Qid> queue{root};
  while (!queue.empty()) {
    Qid current = queue.front();
    queue.pop_front();
    auto it = children_.find(current);
    if (it == children_.end()) continue;
    for (Qid child : it->second) {
      if (visited.insert(child).second) queue.push_back(child);
    }
  }
  return visited;
}

void InMemoryStore::Add(EntityRecord record) {
  auto it = records_.find(record.qid);
  if (it != records_.end()) {
    if (it->second != record) {
      throw IntegrityError("conflicting records for " + record.qid.str());
    }
    return;
  }
  graph_.AddRecord(record);
  Qid qid = record.qid;
  records_.emplace(qid, std::move(record));
}

std::optional<EntityRecord> InMemoryStore::Get(Qid qid) const {
  auto it = records_.find(qid);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void InMemoryStore::ForEach(const std::function<void(const EntityRecord &)> &fn) const {
  for (const auto &[qid, record] : records_) fn(record);
}

std::unique_ptr<FileStore> FileStore::Open(const fs::path &dir) {
  auto store = std::unique_ptr<FileStore>(new FileStore());
  store->dir_ = dir;
  for (const char *name : {kRecordsFile, kIndexFile, kClassGraphFile}) {
    if (!fs::exists(dir / name)) throw IoError("store file missing: " + (dir / name).string());
  }
  std::ifstream index(dir / kIndexFile);
  std::string qid;
  uint64_t offset, length;
  while (index >> qid >> offset >> length) {
    store->index_.emplace(Qid::FromString(qid), Entry{offset, length});
  }
  std::ifstream graph(dir / kClassGraphFile);
  std::string child, parent;
  while (graph >> child >> parent) {
    store->graph_.AddEdge(Qid::FromString(child), Qid::FromString(parent));
  }
  return store;
}

std::string FileStore::ReadLine(const Entry &entry) const {
  std::ifstream in(dir_ / kRecordsFile, std::ios::binary);
  in.seekg(static_cast<std::streamoff>(entry.offset));
  std::string line(entry.length, '\0');
  in.read(line.data(), static_cast<std::streamsize>(entry.length));
  if (!in) throw IoError("truncated store: " + (dir_ / kRecordsFile).string());
  return line;
}

std::optional<EntityRecord> FileStore::Get(Qid qid) const {
  auto it = index_.find(qid);
  if (it == index_.end()) return std::nullopt;
  return ParseEntity(ReadLine(it->second));
}

void FileStore::ForEach(const std::function<void(const EntityRecord &)> &fn) const {
  std::ifstream in(dir_ / kRecordsFile, std::ios::binary);
  std::string line;
  for (const auto &[qid, entry] : index_) {
    in.seekg(static_cast<std::streamoff>(entry.offset));
    line.resize(entry.length);
    in.read(line.data(), static_cast<std::streamsize>(entry.length));
    if (!in) throw IoError("truncated store: " + (dir_ / kRecordsFile).string());
    fn(ParseEntity(line));
  }
}

struct StoreBuilder::Impl {
  fs::path dir;
  std::ofstream records;
  uint64_t offset = 0;
  std::unordered_map<Qid, std::pair<uint64_t, uint64_t>> index;
  std::set<std::pair<Qid, Qid>> edges;
};

StoreBuilder::StoreBuilder(fs::path dir) : impl_(std::make_unique<Impl>()) {
  impl_->dir = std::move(dir);
  fs::create_directories(impl_->dir);
  impl_->records.open(impl_->dir / FileStore::kRecordsFile, std::ios::binary | std::ios::trunc);
  if (!impl_->records) throw IoError("cannot write store at " + impl_->dir.string());
}

StoreBuilder::~StoreBuilder() = default;

void StoreBuilder::Add(const EntityRecord &record) {
  ++stats_.records_in;
  std::string line = ToCanonicalJson(record);
  auto it = impl_->index.find(record.qid);
  if (it != impl_->index.end()) {
    impl_->records.flush();
    std::ifstream in(impl_->dir / FileStore::kRecordsFile, std::ios::binary);
    in.seekg(static_cast<std::streamoff>(it->second.first));
    std::string stored(it->second.second, '\0');
    in.read(stored.data(), static_cast<std::streamsize>(stored.size()));
    if (stored != line) throw IntegrityError("conflicting records for " + record.qid.str());
    ++stats_.duplicates;
    return;
  }
  impl_->records << line << '\n';
  if (!impl_->records) throw IoError("write failed in store " + impl_->dir.string());
  impl_->index.emplace(record.qid, std::make_pair(impl_->offset, uint64_t{line.size()}));
  impl_->offset += line.size() + 1;
  for (Qid parent : record.subclass_of) impl_->edges.emplace(record.qid, parent);
}

std::unique_ptr<FileStore> StoreBuilder::Finish() {
  impl_->records.close();
  if (!impl_->records) throw IoError("write failed in store " + impl_->dir.string());

  std::vector<std::pair<Qid, std::pair<uint64_t, uint64_t>>> sorted(impl_->index.begin(),
                                                                    impl_->index.end());
  std::sort(sorted.begin(), sorted.end());
  std::ofstream index(impl_->dir / FileStore::kIndexFile, std::ios::binary | std::ios::trunc);
  for (const auto &[qid, entry] : sorted) {
    index << qid.str() << '\t' << entry.first << '\t' << entry.second << '\n';
  }
  std::ofstream graph(impl_->dir / FileStore::kClassGraphFile, std::ios::binary | std::ios::trunc);
  for (const auto &[child, parent] : impl_->edges) {
    graph << child.str() << '\t' << parent.str() << '\n';
  }
  index.close();
  graph.close();
  if (!index || !graph) throw IoError("write failed in store " + impl_->dir.string());
  stats_.stored = sorted.size();
  stats_.class_edges = impl_->edges.size();
  return FileStore::Open(impl_->dir);
}

std::unique_ptr<FileStore> BuildStore(const std::vector<EntityRecord> &records,
                                      const fs::path &dir) {
  StoreBuilder builder(dir);
  for (const auto &record : records) builder.Add(record);
  return builder.Finish();
}

}  // namespace polyname
