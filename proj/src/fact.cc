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

#include "rulesel/fact.h"

#include <algorithm>
#include <string>

#include "rulesel/errors.h"

namespace rulesel {

std::string Fact::ToString() const {
  std::string out = relation;
  out += '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    out += args[i].ToLiteral();
  }
  out += ')';
  return out;
}

std::strong_ordering operator<=>(const Fact& a, const Fact& b) {
  if (int c = a.relation.compare(b.relation); c != 0) return c <=> 0;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(),
                                                b.args.begin(), b.args.end());
}

void Instance::DeclareRelation(const std::string& relation, size_t arity) {
  auto [it, inserted] = schema_.emplace(relation, arity);
  if (!inserted && it->second != arity) {
    throw ValidationError({{"", "relation " + relation + " has arity " +
                                    std::to_string(it->second) +
                                    ", not " + std::to_string(arity)}});
  }
}

bool Instance::Insert(Fact fact) {
  DeclareRelation(fact.relation, fact.args.size());
  return facts_.insert(std::move(fact)).second;
}

size_t Instance::Cardinality(const std::string& relation) const {
  auto lo = facts_.lower_bound(Fact{relation, {}});
  size_t n = 0;
  for (auto it = lo; it != facts_.end() && it->relation == relation; ++it) ++n;
  return n;
}

}  // namespace rulesel
