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

// Exact solvers by exhaustive enumeration of rule subsets. Every selection is
// encoded as a bit vector over the universe Eval(rules, premise) ∪ truth (in
// canonical fact order), so FP and FN counts are population counts.
//
// Subsets are visited in binary counting order with the first declared rule
// as the lowest bit (equivalently: recursion from the last rule to the
// first, excluding a rule before including it). The canonical witness of any
// result is the first selection in that order that attains it.

#ifndef RULESEL_EXACT_H_
#define RULESEL_EXACT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rulesel/model.h"

namespace rulesel {

struct ExactConfig {
  size_t max_rules = 24;
  Objective objective = Objective::kFpFn;
  EvalLimits limits;
  // Branch pruning on the FP lower bound. Off only for cross-checking.
  bool prune = true;
};

struct ExactResult {
  int64_t error = 0;
  int64_t size = 0;
  Selection witness;
};

// Points are mutually non-dominated, sorted by ascending error (hence
// strictly descending size), each with its canonical witness.
struct FrontResult {
  std::vector<ParetoPoint> points;
  std::string digest;  // Fingerprint of the input
};

struct BilevelResult {
  int64_t error = 0;
  int64_t size = 0;
  Selection witness;
};

// All entry points throw CapacityError when the rule set has more than
// config.max_rules rules, and in FP mode InfeasibleError when some truth
// fact is produced by no rule.

// Minimum error, with FP mode restricted to selections without false
// negatives.
ExactResult SolveExact(const RuleSet& rules, const DataExample& example,
                       const ExactConfig& config = {});

// Is there a selection with error <= k?
bool DecisionBound(const RuleSet& rules, const DataExample& example,
                   int64_t k, const ExactConfig& config = {});
// Is the optimum exactly k?
bool DecisionExactValue(const RuleSet& rules, const DataExample& example,
                        int64_t k, const ExactConfig& config = {});

FrontResult ParetoFront(const RuleSet& rules, const DataExample& example,
                        const ExactConfig& config = {});

// Whether no selection strictly dominates the candidate's (error, size). In
// FP mode a candidate with false negatives is never optimal.
bool IsParetoOptimal(const RuleSet& rules, const DataExample& example,
                     const Selection& candidate,
                     const ExactConfig& config = {});

bool ParetoMembership(const RuleSet& rules, const DataExample& example,
                      int64_t error, int64_t size,
                      const ExactConfig& config = {});

// Minimum error first, then minimum size among minimum-error selections.
BilevelResult BilevelOptimum(const RuleSet& rules, const DataExample& example,
                             const ExactConfig& config = {});
bool IsBilevelOptimal(const RuleSet& rules, const DataExample& example,
                      const Selection& candidate,
                      const ExactConfig& config = {});

}  // namespace rulesel

#endif  // RULESEL_EXACT_H_
