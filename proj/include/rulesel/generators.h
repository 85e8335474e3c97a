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

// Instance generators: set-cover encodings into rule selection, and seeded
// random instances.

#ifndef RULESEL_GENERATORS_H_
#define RULESEL_GENERATORS_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rulesel/model.h"

namespace rulesel {

struct SetCoverInstance {
  std::vector<std::string> universe;
  std::vector<std::set<std::string>> sets;
  std::optional<int64_t> k;
};

// Throws Error(kInvalidArgument) unless every set is non-empty, every
// element belongs to the universe, and the sets cover the universe.
void CheckSetCover(const SetCoverInstance& sc);

// Smallest number of sets covering the universe, by enumeration.
int64_t MinCoverSize(const SetCoverInstance& sc);

struct GeneratedInstance {
  RuleSet rules;
  DataExample example;
};

// Rules r_i: Set_i(x) -> B(x); premise Set_i = S_i ∪ {a_i}; truth B = U.
GeneratedInstance GenerateSetCoverEncoding(const SetCoverInstance& sc);

// As above, with p = |sets| clones b_j^1..b_j^p of every u_j added to each
// Set_i containing u_j and to the truth.
GeneratedInstance GenerateClonedSetCoverEncoding(const SetCoverInstance& sc);

// Same cover structure over the fixed premise schema {One/1, S/2, Bit_0/2,
// Bit_1/2, Succ/2}: rule sigma_i selects x with S(x, z) where z is pinned to
// i by its L-bit binary code, L = ceil(log2(p + 1)), bit 1 most significant.
GeneratedInstance GenerateFixedSchemaEncoding(const SetCoverInstance& sc);

// Bit width used by GenerateFixedSchemaEncoding for p sets.
int BitWidth(size_t num_sets);

struct GenSeed {
  uint64_t seed = 0;
  // Set cover knobs.
  size_t universe_size = 6;
  size_t num_sets = 5;
  double density = 0.4;
  // Rule selection knobs.
  size_t num_rules = 8;
  size_t domain_size = 20;
  size_t num_unary = 4;      // premise relations P1..Pn, arity 1
  size_t num_binary = 2;     // premise relations E1..En, arity 2
  double join_rule_rate = 0.3;  // share of rules with a two-atom join premise
  double fp_noise = 0.2;   // chance a produced fact is left out of the truth
  double fn_noise = 0.0;   // chance an unproduced domain fact joins the truth

  // "seed=42 universe=6 sets=5 ..." for manifest lines.
  std::string Describe() const;
};

// Each set takes each element with probability `density`; uncovered
// elements then join a random set, and empty sets get a random element.
// Throws Error(kInvalidArgument) on knobs outside their ranges.
SetCoverInstance GenerateRandomSetCover(const GenSeed& seed);

// Rules Pi(x) -> T(x), Pi(x), Pj(x) -> T(x) and Pi(y), Ej(y, x) -> T(x)
// over a random premise; the truth is Eval(all rules) with planted noise.
GeneratedInstance GenerateRandomRuleSelection(const GenSeed& seed);

// Text form of a set cover instance, mirroring the set-system format:
//   universe: "u1" "u2"
//   set "S1": "u1"
std::string WriteSetCover(const SetCoverInstance& sc);
SetCoverInstance ParseSetCover(std::string_view text);

}  // namespace rulesel

#endif  // RULESEL_GENERATORS_H_
