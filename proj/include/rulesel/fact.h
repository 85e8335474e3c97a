// Copyright 2026 The Rulesel Authors
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

#ifndef RULESEL_FACT_H_
#define RULESEL_FACT_H_

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rulesel/value.h"

namespace rulesel {

// Relation name to arity.
using Schema = std::map<std::string, size_t>;

struct Fact {
  std::string relation;
  std::vector<Value> args;

  // Canonical text, e.g. Set1("u1").
  std::string ToString() const;

  friend bool operator==(const Fact& a, const Fact& b) = default;
  friend std::strong_ordering operator<=>(const Fact& a, const Fact& b);
};

using FactSet = std::set<Fact>;

// A set of facts together with the schema they conform to. Inserting a fact
// over an unknown relation extends the schema; inserting one whose arity
// disagrees with the schema throws ValidationError.
class Instance {
 public:
  Instance() = default;
  explicit Instance(Schema schema) : schema_(std::move(schema)) {}

  // Returns true if the fact was not present before.
  bool Insert(Fact fact);
  void DeclareRelation(const std::string& relation, size_t arity);

  bool Contains(const Fact& fact) const { return facts_.count(fact) > 0; }
  size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }

  const Schema& schema() const { return schema_; }
  const FactSet& facts() const { return facts_; }

  // Number of facts over one relation.
  size_t Cardinality(const std::string& relation) const;

  friend bool operator==(const Instance& a, const Instance& b) = default;

 private:
  Schema schema_;
  FactSet facts_;
};

}  // namespace rulesel

#endif  // RULESEL_FACT_H_
