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

// Core domain types: Horn rules over a premise schema and a conclusion
// schema, data examples, selections of rules and their error reports.

#ifndef RULESEL_MODEL_H_
#define RULESEL_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rulesel/errors.h"
#include "rulesel/fact.h"
#include "rulesel/value.h"

namespace rulesel {

struct Variable {
  std::string name;

  // Anonymous variables come from `_` and get names starting with '_'.
  bool anonymous() const { return !name.empty() && name[0] == '_'; }

  friend bool operator==(const Variable&, const Variable&) = default;
};

class Term {
 public:
  static Term Var(std::string name) { return Term(Variable{std::move(name)}); }
  static Term Const(Value value) { return Term(std::move(value)); }

  bool is_variable() const { return std::holds_alternative<Variable>(data_); }
  bool is_constant() const { return std::holds_alternative<Value>(data_); }
  const Variable& variable() const { return std::get<Variable>(data_); }
  const Value& constant() const { return std::get<Value>(data_); }

  std::string ToString() const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  explicit Term(Variable v) : data_(std::move(v)) {}
  explicit Term(Value v) : data_(std::move(v)) {}

  std::variant<Variable, Value> data_;
};

struct Atom {
  enum class Kind { kRelational, kBuiltin };

  Kind kind = Kind::kRelational;
  std::string name;  // relation name or builtin name
  std::vector<Term> terms;
  std::optional<Decimal> threshold;  // jaccard_geq only

  static Atom Relational(std::string relation, std::vector<Term> terms);
  static Atom Builtin(std::string builtin, std::vector<Term> terms,
                      std::optional<Decimal> threshold = std::nullopt);

  bool is_builtin() const { return kind == Kind::kBuiltin; }
  std::string ToString() const;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Rule {
  std::string name;
  std::vector<Atom> premise;
  Atom conclusion;

  std::string ToString() const;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct RuleSet {
  std::vector<Rule> rules;
  Schema premise_schema;
  Schema conclusion_schema;

  // Builds a rule set whose schemas are inferred from atom usage. Never
  // throws: arity conflicts and schema overlap are left for Validate.
  static RuleSet FromRules(std::vector<Rule> rules);

  // Index of the named rule, or nullopt.
  std::optional<size_t> Find(const std::string& name) const;
  size_t size() const { return rules.size(); }

  friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

struct DataExample {
  Instance premise;
  Instance truth;

  friend bool operator==(const DataExample&, const DataExample&) = default;
};

// Names of the chosen rules.
struct Selection {
  std::set<std::string> chosen;

  static Selection All(const RuleSet& rules);
  bool empty() const { return chosen.empty(); }

  friend bool operator==(const Selection&, const Selection&) = default;
};

// Maps a selection onto rule indices in declaration order. Throws
// ValidationError on a name that is not in the rule set.
std::vector<size_t> ResolveSelection(const RuleSet& rules,
                                     const Selection& selection);

struct ErrorReport {
  FactSet fp;
  FactSet fn;
  int64_t fp_count = 0;
  int64_t fn_count = 0;
  int64_t total = 0;
};

// Bounds that keep evaluation polynomial: at most `max_premise_atoms` atoms
// per premise and conclusion relations of arity at most
// `max_conclusion_arity`.
struct EvalLimits {
  int max_premise_atoms = 16;
  int max_conclusion_arity = 16;

  // Throws Error(kInvalidArgument) unless both bounds are positive.
  static EvalLimits Make(int max_premise_atoms, int max_conclusion_arity);
};

struct ParetoPoint {
  int64_t error = 0;
  int64_t size = 0;
  std::optional<Selection> witness;
};

enum class Objective { kFp, kFpFn };

const char* ObjectiveName(Objective objective);

// Number of premise atoms, builtins included.
int64_t RuleSize(const Rule& rule);

// Sum of RuleSize over the chosen rules.
int64_t RuleSetSize(const Selection& selection, const RuleSet& rules);

struct ValidationReport {
  std::vector<Violation> violations;  // sorted, unique
  bool ok() const { return violations.empty(); }
};

// Checks safety, schema disjointness and arity consistency, builtin usage,
// and (when given) the premise-size and conclusion-arity limits. The result
// does not depend on rule order.
ValidationReport Validate(const RuleSet& rules,
                          const std::optional<EvalLimits>& limits);

// Throws ValidationError when Validate reports anything.
void ValidateOrThrow(const RuleSet& rules,
                     const std::optional<EvalLimits>& limits);

}  // namespace rulesel

#endif  // RULESEL_MODEL_H_
