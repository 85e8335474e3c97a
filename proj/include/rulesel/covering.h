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

// Set-system views of rule selection and their approximation solvers.
//
// FP-only selection maps to Red-Blue Set Cover: blue elements are the truth
// facts, red elements the produced facts outside the truth, one set per
// rule. FP+FN selection maps the same way to Positive-Negative Partial Set
// Cover, which is solved through a further reduction to Red-Blue Set Cover
// that adds a private "skip" set {p, n_p} for every positive p.

#ifndef RULESEL_COVERING_H_
#define RULESEL_COVERING_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rulesel/eval.h"
#include "rulesel/model.h"

namespace rulesel {

using ElementSet = std::set<std::string>;

struct SetOrigin {
  enum class Kind { kRule, kSkip };
  Kind kind = Kind::kRule;
  std::string name;  // rule name, or the positive element a skip set covers

  friend bool operator==(const SetOrigin&, const SetOrigin&) = default;
};

using BackMap = std::map<std::string, SetOrigin>;

struct LabeledSet {
  std::string label;
  ElementSet elements;

  friend bool operator==(const LabeledSet&, const LabeledSet&) = default;
};

struct RbscInstance {
  ElementSet red;
  ElementSet blue;
  std::vector<LabeledSet> sets;
  BackMap back_map;
};

struct PnpscInstance {
  ElementSet positive;
  ElementSet negative;
  std::vector<LabeledSet> sets;
  BackMap back_map;
};

// A set of chosen labels with the quantities it induces. For Red-Blue
// instances `cost` equals `covered_red`; for Positive-Negative instances it is
// |uncovered positives| + |covered negatives|.
struct CoverSelection {
  std::vector<std::string> chosen;  // sorted
  int64_t covered_red = 0;
  int64_t cost = 0;
  ElementSet covered_blue;
  ElementSet uncovered_positive;
  ElementSet covered_negative;
};

enum class ThresholdSchedule { kPowersOfTwo, kExactCounts, kBoth };
enum class TieBreak { kLabelOrder };

struct GreedyConfig {
  ThresholdSchedule schedule = ThresholdSchedule::kBoth;
  TieBreak tie_break = TieBreak::kLabelOrder;
};

// Element id of a fact inside a set system.
inline std::string ElementId(const Fact& fact) { return fact.ToString(); }

// Throws InfeasibleError when some truth fact is produced by no rule.
RbscInstance BuildRbsc(const RuleSet& rules, const DataExample& example,
                       const EvalCache& cache);
PnpscInstance BuildPnpsc(const RuleSet& rules, const DataExample& example,
                         const EvalCache& cache);

RbscInstance PnpscToRbsc(const PnpscInstance& instance);

// Red-count thresholds tried by the greedy solver, ascending. Always contains
// 0 and the largest red count of any set.
std::vector<int64_t> GreedyThresholds(const RbscInstance& instance,
                                      const GreedyConfig& config);

// Threshold-sweep greedy. Throws UncoverableError if a blue element is in no
// set.
CoverSelection SolveRbscGreedy(const RbscInstance& instance,
                               const GreedyConfig& config = {});

// Greedy on PnpscToRbsc(instance), with skip sets removed from the answer and
// the cost recomputed on the original instance.
CoverSelection SolvePnpscApprox(const PnpscInstance& instance,
                                const GreedyConfig& config = {});

// Recomputes the induced quantities of a label list. Throws
// Error(kInvalidArgument) on unknown labels.
CoverSelection EvaluateRbscCover(const RbscInstance& instance,
                                 const std::vector<std::string>& labels);
CoverSelection EvaluatePnpscCover(const PnpscInstance& instance,
                                  const std::vector<std::string>& labels);

// Rule names behind the chosen labels; skip sets are dropped. Throws
// Error(kInternal) on a label missing from the back map.
Selection MapBack(const CoverSelection& cover, const BackMap& back_map);

// max(1, log2 n), with n = 0 treated like n = 1.
double ClampedLog2(size_t n);
// 2 * sqrt(num_rules * ClampedLog2(truth_size)).
double FpApproxFactor(size_t num_rules, size_t truth_size);
// 2 * sqrt((num_rules + truth_size) * ClampedLog2(truth_size)).
double FpFnApproxFactor(size_t num_rules, size_t truth_size);

// Debug text format:
//   red: "r1" "r2"
//   blue: "b1"
//   set "S1": "b1" "r1"
// Ids and labels are quoted strings, numbers, or bare identifiers; `#`
// starts a comment. Parsed sets map back to rules named after their labels.
std::string WriteSetSystem(const RbscInstance& instance);
RbscInstance ParseSetSystem(std::string_view text);

}  // namespace rulesel

#endif  // RULESEL_COVERING_H_
