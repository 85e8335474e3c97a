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

// Rule evaluation and error accounting against a data example.

#ifndef RULESEL_EVAL_H_
#define RULESEL_EVAL_H_

#include <cstddef>
#include <string>
#include <vector>

#include "rulesel/model.h"

namespace rulesel {

// Eval(rule, premise): the conclusion atom instantiated by every assignment
// that maps each relational premise atom to a fact of `premise` and
// satisfies each builtin. A relation absent from the premise instance is
// empty; one present with a different arity raises Error(kEvaluation).
// Throws ValidationError if the rule is unsafe.
FactSet EvalRule(const Rule& rule, const Instance& premise);

// Per-rule outputs of a rule set on one premise instance, and their union.
// Built once, read-only afterwards, and bound to the (rule set, instance)
// pair it was built from.
class EvalCache {
 public:
  // Validates the rules against `limits` first and throws ValidationError
  // if they exceed them.
  static EvalCache Build(const RuleSet& rules, const Instance& premise,
                         const EvalLimits& limits = EvalLimits());

  const FactSet& RuleOutput(size_t rule_index) const {
    return outputs_[rule_index];
  }
  const FactSet& Union() const { return union_; }
  size_t num_rules() const { return outputs_.size(); }

  // Cheap identity check: same rule names in order and same premise size.
  bool Matches(const RuleSet& rules, const Instance& premise) const;

 private:
  std::vector<std::string> rule_names_;
  size_t premise_size_ = 0;
  std::vector<FactSet> outputs_;
  FactSet union_;
};

// Union of the chosen rules' outputs. With a cache, only unions are
// computed; the cache must come from the same rules and premise.
FactSet EvalRuleSet(const RuleSet& rules, const Selection& selection,
                    const Instance& premise, const EvalCache* cache = nullptr);

// FP = Eval(selection) \ truth, FN = truth \ Eval(selection).
ErrorReport ComputeErrors(const RuleSet& rules, const Selection& selection,
                          const DataExample& example,
                          const EvalCache* cache = nullptr);

struct Feasibility {
  bool ok = true;
  FactSet missing;  // truth facts produced by no rule
};

// Whether the full rule set produces every truth fact.
Feasibility CheckFpFeasible(const RuleSet& rules, const DataExample& example,
                            const EvalCache* cache = nullptr);

}  // namespace rulesel

#endif  // RULESEL_EVAL_H_
