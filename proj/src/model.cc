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

#include "rulesel/model.h"

#include <algorithm>
#include <map>
#include <string>

#include "rulesel/builtins.h"

namespace rulesel {

std::string Term::ToString() const {
  if (is_constant()) return constant().ToLiteral();
  return variable().anonymous() ? "_" : variable().name;
}

Atom Atom::Relational(std::string relation, std::vector<Term> terms) {
  return Atom{Kind::kRelational, std::move(relation), std::move(terms),
              std::nullopt};
}

Atom Atom::Builtin(std::string builtin, std::vector<Term> terms,
                   std::optional<Decimal> threshold) {
  return Atom{Kind::kBuiltin, std::move(builtin), std::move(terms), threshold};
}

std::string Atom::ToString() const {
  std::string out = name + "(";
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) out += ", ";
    out += terms[i].ToString();
  }
  if (threshold.has_value()) out += ", " + threshold->ToString();
  out += ")";
  return out;
}

std::string Rule::ToString() const {
  std::string out = "rule " + name + ": ";
  for (size_t i = 0; i < premise.size(); ++i) {
    if (i > 0) out += ", ";
    out += premise[i].ToString();
  }
  out += " -> " + conclusion.ToString() + ".";
  return out;
}

RuleSet RuleSet::FromRules(std::vector<Rule> rules) {
  RuleSet set;
  set.rules = std::move(rules);
  for (const Rule& rule : set.rules) {
    for (const Atom& atom : rule.premise) {
      if (!atom.is_builtin()) {
        set.premise_schema.emplace(atom.name, atom.terms.size());
      }
    }
    set.conclusion_schema.emplace(rule.conclusion.name,
                                  rule.conclusion.terms.size());
  }
  return set;
}

std::optional<size_t> RuleSet::Find(const std::string& name) const {
  for (size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].name == name) return i;
  }
  return std::nullopt;
}

Selection Selection::All(const RuleSet& rules) {
  Selection s;
  for (const Rule& r : rules.rules) s.chosen.insert(r.name);
  return s;
}

std::vector<size_t> ResolveSelection(const RuleSet& rules,
                                     const Selection& selection) {
  std::vector<size_t> indices;
  std::vector<Violation> unknown;
  for (const std::string& name : selection.chosen) {
    if (auto index = rules.Find(name)) {
      indices.push_back(*index);
    } else {
      unknown.push_back({name, "selected rule does not exist"});
    }
  }
  if (!unknown.empty()) throw ValidationError(std::move(unknown));
  std::sort(indices.begin(), indices.end());
  return indices;
}

EvalLimits EvalLimits::Make(int max_premise_atoms, int max_conclusion_arity) {
  if (max_premise_atoms < 1 || max_conclusion_arity < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "evaluation limits must be positive");
  }
  return EvalLimits{max_premise_atoms, max_conclusion_arity};
}

const char* ObjectiveName(Objective objective) {
  return objective == Objective::kFp ? "fp" : "fpfn";
}

int64_t RuleSize(const Rule& rule) {
  return static_cast<int64_t>(rule.premise.size());
}

int64_t RuleSetSize(const Selection& selection, const RuleSet& rules) {
  int64_t total = 0;
  for (size_t index : ResolveSelection(rules, selection)) {
    total += RuleSize(rules.rules[index]);
  }
  return total;
}

namespace {

std::string JoinArities(const std::set<size_t>& arities) {
  std::string out;
  for (size_t a : arities) {
    if (!out.empty()) out += ",";
    out += std::to_string(a);
  }
  return out;
}

using ArityUses = std::map<std::string, std::set<size_t>>;

bool Conflicting(const ArityUses& uses, const std::string& relation) {
  auto it = uses.find(relation);
  return it != uses.end() && it->second.size() > 1;
}

void CheckRule(const Rule& rule, const RuleSet& rules,
               const std::optional<EvalLimits>& limits,
               const ArityUses& premise_uses, const ArityUses& conclusion_uses,
               std::vector<Violation>& out) {
  auto report = [&](std::string reason) {
    out.push_back({rule.name, std::move(reason)});
  };

  if (rule.premise.empty()) report("premise is empty");

  std::set<std::string> bound;
  for (const Atom& atom : rule.premise) {
    if (atom.is_builtin()) continue;
    for (const Term& t : atom.terms) {
      if (t.is_variable()) bound.insert(t.variable().name);
    }
  }

  auto check_schema = [&](const Atom& atom, const Schema& own,
                          const ArityUses& uses, const char* role) {
    auto it = own.find(atom.name);
    if (Conflicting(uses, atom.name)) return;  // reported once per use
    if (it == own.end()) {
      report(std::string("relation ") + atom.name + " is not in the " + role +
             " schema");
    } else if (it->second != atom.terms.size()) {
      report("relation " + atom.name + " used with arity " +
             std::to_string(atom.terms.size()) + " but declared with arity " +
             std::to_string(it->second));
    }
  };

  const BuiltinRegistry& builtins = BuiltinRegistry::Default();
  for (const Atom& atom : rule.premise) {
    if (!atom.is_builtin()) {
      if (atom.terms.empty()) {
        report("relation " + atom.name + " has no arguments");
      }
      check_schema(atom, rules.premise_schema, premise_uses, "premise");
      continue;
    }
    const BuiltinSpec* spec = builtins.Find(atom.name);
    if (spec == nullptr) {
      report("unknown builtin " + atom.name);
      continue;
    }
    if (atom.terms.size() != spec->arity) {
      report("builtin " + atom.name + " takes " + std::to_string(spec->arity) +
             " terms");
    }
    if (atom.threshold.has_value() != spec->has_threshold) {
      report(spec->has_threshold ? "builtin " + atom.name + " needs a threshold"
                                 : "builtin " + atom.name +
                                       " takes no threshold");
    }
    for (const Term& t : atom.terms) {
      if (t.is_variable() && !bound.count(t.variable().name)) {
        report("unsafe: variable " + t.ToString() + " in builtin " +
               atom.name + " is not bound by a relational atom");
      }
    }
  }

  if (rule.conclusion.is_builtin()) {
    report("conclusion must be a relational atom");
  } else {
    check_schema(rule.conclusion, rules.conclusion_schema, conclusion_uses,
                 "conclusion");
  }
  for (const Term& t : rule.conclusion.terms) {
    if (t.is_variable() && !bound.count(t.variable().name)) {
      report("unsafe: variable " + t.ToString() +
             " in the conclusion is not bound by a relational atom");
    }
  }

  if (limits.has_value()) {
    if (RuleSize(rule) > limits->max_premise_atoms) {
      report("premise has " + std::to_string(RuleSize(rule)) +
             " atoms, limit is " + std::to_string(limits->max_premise_atoms));
    }
    if (static_cast<int64_t>(rule.conclusion.terms.size()) >
        limits->max_conclusion_arity) {
      report("conclusion arity " +
             std::to_string(rule.conclusion.terms.size()) + " exceeds limit " +
             std::to_string(limits->max_conclusion_arity));
    }
  }
}

}  // namespace

ValidationReport Validate(const RuleSet& rules,
                          const std::optional<EvalLimits>& limits) {
  std::vector<Violation> out;

  std::map<std::string, int> name_counts;
  for (const Rule& rule : rules.rules) ++name_counts[rule.name];
  for (const auto& [name, count] : name_counts) {
    if (count > 1) out.push_back({name, "rule name is not unique"});
  }

  for (const auto& [relation, arity] : rules.premise_schema) {
    if (rules.conclusion_schema.count(relation)) {
      out.push_back({"", "relation " + relation +
                             " is in both the premise and conclusion schemas"});
    }
  }

  // Arity conflicts across uses are reported against every rule involved so
  // that the report is independent of rule order.
  ArityUses premise_arities;
  ArityUses conclusion_arities;
  for (const Rule& rule : rules.rules) {
    for (const Atom& atom : rule.premise) {
      if (!atom.is_builtin()) {
        premise_arities[atom.name].insert(atom.terms.size());
      }
    }
    conclusion_arities[rule.conclusion.name].insert(
        rule.conclusion.terms.size());
  }
  for (const Rule& rule : rules.rules) {
    auto flag = [&](const std::string& relation, const ArityUses& uses) {
      if (Conflicting(uses, relation)) {
        out.push_back({rule.name, "relation " + relation +
                                      " used with conflicting arities " +
                                      JoinArities(uses.at(relation))});
      }
    };
    for (const Atom& atom : rule.premise) {
      if (!atom.is_builtin()) flag(atom.name, premise_arities);
    }
    flag(rule.conclusion.name, conclusion_arities);
    CheckRule(rule, rules, limits, premise_arities, conclusion_arities, out);
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return ValidationReport{std::move(out)};
}

void ValidateOrThrow(const RuleSet& rules,
                     const std::optional<EvalLimits>& limits) {
  ValidationReport report = Validate(rules, limits);
  if (!report.ok()) throw ValidationError(std::move(report.violations));
}

}  // namespace rulesel
