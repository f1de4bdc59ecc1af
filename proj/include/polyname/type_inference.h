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

#ifndef POLYNAME_TYPE_INFERENCE_H_
#define POLYNAME_TYPE_INFERENCE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "polyname/entity_record.h"
#include "polyname/entity_store.h"

namespace polyname {

// Declaration order is the canonical serialization order.
enum class EntityType : uint8_t { kLoc = 0, kOrg = 1, kPer = 2 };

inline constexpr EntityType kAllEntityTypes[] = {EntityType::kLoc, EntityType::kOrg,
                                                 EntityType::kPer};

std::string_view EntityTypeName(EntityType type);
std::optional<EntityType> ParseEntityType(std::string_view name);

// Nonempty subset of {LOC, ORG, PER}; an empty set is representable only
// as an intermediate value.
class EntityTypeSet {
 public:
  constexpr EntityTypeSet() = default;
  EntityTypeSet(std::initializer_list<EntityType> types) {
    for (EntityType t : types) Insert(t);
  }

  void Insert(EntityType t) { bits_ |= Bit(t); }
  bool Contains(EntityType t) const { return (bits_ & Bit(t)) != 0; }
  bool empty() const { return bits_ == 0; }
  int size() const { return __builtin_popcount(bits_); }
  uint8_t bits() const { return bits_; }
  std::vector<EntityType> members() const;

  // "LOC+ORG" style name used in the census.
  std::string CombinationName() const;
  // "LOC,ORG" style name used in resource files.
  std::string JoinedName() const;

  static EntityTypeSet FromBits(uint8_t bits);

  auto operator<=>(const EntityTypeSet &) const = default;

 private:
  static constexpr uint8_t Bit(EntityType t) { return uint8_t(1u << static_cast<int>(t)); }
  uint8_t bits_ = 0;
};

struct TypeRoots {
  Qid per{5};       // human
  Qid loc{82794};   // geographic region
  Qid org{43229};   // organization
};

// Subclass closures of the three roots, computed once per run.
struct TypeClosures {
  std::unordered_set<Qid> per;
  std::unordered_set<Qid> loc;
  std::unordered_set<Qid> org;

  static TypeClosures Compute(const ClassGraph &graph, const TypeRoots &roots);
};

// Types whose closure intersects the entity's direct P31 targets, or nullopt
// when none does.
std::optional<EntityTypeSet> Classify(const EntityRecord &entity, const TypeClosures &closures);

// Picks one type for a multi-type entity:
//   ORG+PER -> ORG, LOC+ORG -> LOC, LOC+PER -> PER, LOC+ORG+PER -> ORG.
// Throws std::invalid_argument on an empty set.
EntityType Disambiguate(const EntityTypeSet &types);

struct CensusRow {
  EntityTypeSet combination;
  uint64_t count = 0;
  // Percentage times 100, rounded half up (6348 means 63.48%).
  uint64_t basis_points = 0;

  std::string percentage() const;
};

class TypeCensus {
 public:
  void Add(const EntityTypeSet &types) { ++counts_[types.bits()]; ++total_; }
  uint64_t total() const { return total_; }
  // Rows by descending count; ties by canonical combination name.
  std::vector<CensusRow> Rows() const;
  // combination<TAB>count<TAB>percentage lines.
  std::string ToTsv() const;

 private:
  uint64_t counts_[8] = {};
  uint64_t total_ = 0;
};

}  // namespace polyname

#endif  // POLYNAME_TYPE_INFERENCE_H_
