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

// Builtin predicates usable in rule premises. All of them are pure, total on
// Value, and only filter bindings produced by relational atoms.
//
//   neq(a, b)               a != b (no coercion between text and number)
//   eq(a, b)                a == b
//   jaccard_geq(a, b, t)    token Jaccard similarity of a and b is >= t
//   geq(a, b), leq(a, b)    numeric order on numbers, code point order on
//                           texts, false across kinds
//
// Jaccard tokenization: ASCII letters are lowercased, any run of characters
// that are not ASCII letters or digits separates tokens (bytes >= 0x80 count
// as token characters so non-ASCII words stay intact), empty tokens are
// dropped and duplicates collapse. Two empty token sets have similarity 1.

#ifndef RULESEL_BUILTINS_H_
#define RULESEL_BUILTINS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rulesel/value.h"

namespace rulesel {

struct BuiltinSpec {
  using Predicate = std::function<bool(std::span<const Value> args,
                                       const std::optional<Decimal>& threshold)>;
  std::string name;
  size_t arity = 0;  // number of terms, threshold excluded
  bool has_threshold = false;
  Predicate predicate;
};

class BuiltinRegistry {
 public:
  // The fixed set {neq, eq, jaccard_geq, geq, leq}.
  static const BuiltinRegistry& Default();

  const BuiltinSpec* Find(std::string_view name) const;
  bool Contains(std::string_view name) const { return Find(name) != nullptr; }

 private:
  BuiltinRegistry();
  std::map<std::string, BuiltinSpec, std::less<>> specs_;
};

std::set<std::string> JaccardTokens(std::string_view text);

struct JaccardRatio {
  uint64_t intersection = 0;
  uint64_t union_size = 0;  // never zero; empty vs empty reports 1/1
};

// Numbers are rendered to their canonical decimal text first.
JaccardRatio JaccardCounts(const Value& a, const Value& b);
double Jaccard(const Value& a, const Value& b);

}  // namespace rulesel

#endif  // RULESEL_BUILTINS_H_
