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

#include "polyname/type_inference.h"

#include <algorithm>
#include <stdexcept>

namespace polyname {

std::string_view EntityTypeName(EntityType type) {
  switch (type) {
    case EntityType::kLoc: return "LOC";
    case EntityType::kOrg: return "ORG";
    case EntityType::kPer: return "PER";
  }
  return "";
}

std::optional<EntityType> ParseEntityType(std::string_view name) {
  for (EntityType t : kAllEntityTypes) {
    if (EntityTypeName(t) == name) return t;
  }
  return std::nullopt;
}

std::vector<EntityType> EntityTypeSet::members() const {
  std::vector<EntityType> out;
  for (EntityType t : kAllEntityTypes) {
    if (Contains(t)) out.push_back(t);
  }
  return out;
}

static std::string Join(const EntityTypeSet &set, char separator) {
  std::string out;
  for (EntityType t : set.members()) {
    if (!out.empty()) out += separator;
    out += EntityTypeName(t);
  }
  return out;
}

std::string EntityTypeSet::CombinationName() const { return Join(*this, '+'); }
std::string EntityTypeSet::JoinedName() const { return Join(*this, ','); }

EntityTypeSet EntityTypeSet::FromBits(uint8_t bits) {
  EntityTypeSet set;
  set.bits_ = bits & 0x7;
  return set;
}

TypeClosures TypeClosures::Compute(const ClassGraph &graph, const TypeRoots &roots) {
  return TypeClosures{graph.Descendants(roots.per), graph.Descendants(roots.loc),
                      graph.Descendants(roots.org)};
}

std::optional<EntityTypeSet> Classify(const EntityRecord &entity, const TypeClosures &closures) {
  EntityTypeSet types;
  for (Qid cls : entity.instance_of) {
    if (closures.per.contains(cls)) types.Insert(EntityType::kPer);
    if (closures.loc.contains(cls)) types.Insert(EntityType::kLoc);
    if (closures.org.contains(cls)) types.Insert(EntityType::kOrg);
  }
  if (types.empty()) return std::nullopt;
  return types;
}

EntityType Disambiguate(const EntityTypeSet &types) {
  const bool loc = types.Contains(EntityType::kLoc);
  const bool org = types.Contains(EntityType::kOrg);
  const bool per = types.Contains(EntityType::kPer);
  switch (types.size()) {
    case 0:
      throw std::invalid_argument("cannot disambiguate an empty type set");
    case 1:
      return types.members().front();
    case 3:
      return EntityType::kOrg;
    default:
      if (org && per) return EntityType::kOrg;
      if (loc && org) return EntityType::kLoc;
      return EntityType::kPer;  // LOC+PER
  }
}

std::string CensusRow::percentage() const {
  return std::to_string(basis_points / 100) + "." + (basis_points % 100 < 10 ? "0" : "") +
         std::to_string(basis_points % 100) + "%";
}

std::vector<CensusRow> TypeCensus::Rows() const {
  std::vector<CensusRow> rows;
  for (uint8_t bits = 1; bits < 8; ++bits) {
    if (counts_[bits] == 0) continue;
    CensusRow row;
    row.combination = EntityTypeSet::FromBits(bits);
    row.count = counts_[bits];
    // Half-up rounding of count / total * 10000 in integers.
    row.basis_points = (row.count * 20000 + total_) / (2 * total_);
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(), [](const CensusRow &a, const CensusRow &b) {
    if (a.count != b.count) return a.count > b.count;
    return a.combination.CombinationName() < b.combination.CombinationName();
  });
  return rows;
}

std::string TypeCensus::ToTsv() const {
  std::string out;
  for (const CensusRow &row : Rows()) {
    out += row.combination.CombinationName() + "\t" + std::to_string(row.count) + "\t" +
           row.percentage() + "\n";
  }
  return out;
}

}  // namespace polyname
