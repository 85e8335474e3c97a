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


// Brute-force reference implementations used only by tests. Each one
// follows the textbook definition with no indexing, pruning or reuse of the
// production data paths, so agreement is meaningful.

#ifndef RULESEL_TESTS_ORACLES_H_
#define RULESEL_TESTS_ORACLES_H_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rulesel/builtins.h"
#include "rulesel/covering.h"
#include "rulesel/generators.h"
#include "rulesel/model.h"

namespace rulesel::oracle {

// Deterministic draws that do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  uint64_t Below(uint64_t n) { return engine_() % n; }
  int Between(int lo, int hi) { return lo + static_cast<int>(Below(hi - lo + 1)); }
  bool Chance(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 engine_;
};

// Every value in the premise plus every constant of the rule.
inline std::vector<Value> ActiveDomain(const Rule& rule, const Instance& premise) {
  std::set<Value> values;
  for (const Fact& f : premise.facts()) values.insert(f.args.begin(), f.args.end());
  for (const Atom& a : rule.premise) {
    for (const Term& t : a.terms) {
      if (t.is_constant()) values.insert(t.constant());
    }
  }
  return {values.begin(), values.end()};
}

inline std::vector<std::string> RuleVariables(const Rule& rule) {
  std::vector<std::string> vars;
  auto add = [&](const Atom& a) {
    for (const Term& t : a.terms) {
      if (t.is_variable() &&
          std::find(vars.begin(), vars.end(), t.variable().name) == vars.end()) {
        vars.push_back(t.variable().name);
      }
    }
  };
  for (const Atom& a : rule.premise) add(a);
  add(rule.conclusion);
  return vars;
}

// Tries every assignment of domain values to the rule's variables.
inline FactSet NaiveEval(const Rule& rule, const Instance& premise) {
  std::vector<Value> domain = ActiveDomain(rule, premise);
  std::vector<std::string> vars = RuleVariables(rule);
  FactSet out;
  if (domain.empty() && !vars.empty()) return out;
  std::vector<size_t> pick(vars.size(), 0);
  auto value_of = [&](const Term& t) -> Value {
    if (t.is_constant()) return t.constant();
    size_t i = std::find(vars.begin(), vars.end(), t.variable().name) - vars.begin();
    return domain[pick[i]];
  };
  while (true) {
    bool holds = true;
    for (const Atom& a : rule.premise) {
      std::vector<Value> args;
      for (const Term& t : a.terms) args.push_back(value_of(t));
      if (a.is_builtin()) {
        const BuiltinSpec* spec = BuiltinRegistry::Default().Find(a.name);
        holds = spec->predicate(args, a.threshold);
      } else {
        holds = premise.Contains(Fact{a.name, args});
      }
      if (!holds) break;
    }
    if (holds) {
      Fact f{rule.conclusion.name, {}};
      for (const Term& t : rule.conclusion.terms) f.args.push_back(value_of(t));
      out.insert(f);
    }
    size_t k = 0;
    while (k < pick.size() && ++pick[k] == domain.size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

inline std::vector<FactSet> NaiveOutputs(const RuleSet& rules, const Instance& premise) {
  std::vector<FactSet> outs;
  for (const Rule& r : rules.rules) outs.push_back(NaiveEval(r, premise));
  return outs;
}

struct Score {
  int64_t fp = 0;
  int64_t fn = 0;
};

inline Score ScoreMask(const std::vector<FactSet>& outputs, const FactSet& truth,
                       uint64_t mask) {
  FactSet produced;
  for (size_t i = 0; i < outputs.size(); ++i) {
    if (mask >> i & 1) produced.insert(outputs[i].begin(), outputs[i].end());
  }
  Score s;
  for (const Fact& f : produced) s.fp += truth.count(f) ? 0 : 1;
  for (const Fact& f : truth) s.fn += produced.count(f) ? 0 : 1;
  return s;
}

inline int64_t SizeOfMask(const RuleSet& rules, uint64_t mask) {
  int64_t size = 0;
  for (size_t i = 0; i < rules.size(); ++i) {
    if (mask >> i & 1) size += static_cast<int64_t>(rules.rules[i].premise.size());
  }
  return size;
}

inline Selection SelectionOfMask(const RuleSet& rules, uint64_t mask) {
  Selection s;
  for (size_t i = 0; i < rules.size(); ++i) {
    if (mask >> i & 1) s.chosen.insert(rules.rules[i].name);
  }
  return s;
}

// Error of a mask under the objective, or nullopt when FP mode rejects it.
inline std::optional<int64_t> ObjectiveOf(const Score& s, Objective objective) {
  if (objective == Objective::kFp) {
    if (s.fn > 0) return std::nullopt;
    return s.fp;
  }
  return s.fp + s.fn;
}

struct Optimum {
  int64_t error = 0;
  uint64_t witness = 0;
};

// Counts masks upwards (rule 0 is the lowest bit) and keeps the first
// strictly better one. nullopt when no mask is admissible.
inline std::optional<Optimum> BruteOptimum(const RuleSet& rules,
                                           const DataExample& example,
                                           Objective objective) {
  std::vector<FactSet> outputs = NaiveOutputs(rules, example.premise);
  std::optional<Optimum> best;
  for (uint64_t mask = 0; mask < (uint64_t{1} << rules.size()); ++mask) {
    auto error = ObjectiveOf(ScoreMask(outputs, example.truth.facts(), mask), objective);
    if (error && (!best || *error < best->error)) best = Optimum{*error, mask};
  }
  return best;
}

// All (error, size) pairs that no other admissible pair strictly dominates,
// sorted by ascending error.
inline std::vector<std::pair<int64_t, int64_t>> BruteFront(
    const RuleSet& rules, const DataExample& example, Objective objective) {
  std::vector<FactSet> outputs = NaiveOutputs(rules, example.premise);
  std::set<std::pair<int64_t, int64_t>> pairs;
  for (uint64_t mask = 0; mask < (uint64_t{1} << rules.size()); ++mask) {
    auto error = ObjectiveOf(ScoreMask(outputs, example.truth.facts(), mask), objective);
    if (error) pairs.insert({*error, SizeOfMask(rules, mask)});
  }
  std::vector<std::pair<int64_t, int64_t>> front;
  for (const auto& p : pairs) {
    bool dominated = std::any_of(pairs.begin(), pairs.end(), [&](const auto& q) {
      return q.first <= p.first && q.second <= p.second && q != p;
    });
    if (!dominated) front.push_back(p);
  }
  return front;
}

// Minimum red count over all sub-families covering every blue element;
// nullopt if none does.
inline std::optional<int64_t> BruteRbscMin(const RbscInstance& inst) {
  std::optional<int64_t> best;
  for (uint64_t mask = 0; mask < (uint64_t{1} << inst.sets.size()); ++mask) {
    ElementSet covered;
    for (size_t i = 0; i < inst.sets.size(); ++i) {
      if (mask >> i & 1) covered.insert(inst.sets[i].elements.begin(), inst.sets[i].elements.end());
    }
    if (!std::includes(covered.begin(), covered.end(), inst.blue.begin(), inst.blue.end())) {
      continue;
    }
    int64_t red = 0;
    for (const std::string& e : covered) red += inst.red.count(e) ? 1 : 0;
    if (!best || red < *best) best = red;
  }
  return best;
}

// Uncovered positives plus covered negatives of a sub-family.
inline int64_t PnpscCostOfMask(const PnpscInstance& inst, uint64_t mask) {
  ElementSet covered;
  for (size_t i = 0; i < inst.sets.size(); ++i) {
    if (mask >> i & 1) covered.insert(inst.sets[i].elements.begin(), inst.sets[i].elements.end());
  }
  int64_t cost = 0;
  for (const std::string& p : inst.positive) cost += covered.count(p) ? 0 : 1;
  for (const std::string& n : inst.negative) cost += covered.count(n) ? 1 : 0;
  return cost;
}

inline int64_t BrutePnpscMin(const PnpscInstance& inst) {
  int64_t best = static_cast<int64_t>(inst.positive.size());
  for (uint64_t mask = 0; mask < (uint64_t{1} << inst.sets.size()); ++mask) {
    best = std::min(best, PnpscCostOfMask(inst, mask));
  }
  return best;
}

inline int64_t BruteMinCover(const SetCoverInstance& sc) {
  std::set<std::string> universe(sc.universe.begin(), sc.universe.end());
  int64_t best = static_cast<int64_t>(sc.sets.size()) + 1;
  for (uint64_t mask = 0; mask < (uint64_t{1} << sc.sets.size()); ++mask) {
    std::set<std::string> covered;
    for (size_t i = 0; i < sc.sets.size(); ++i) {
      if (mask >> i & 1) covered.insert(sc.sets[i].begin(), sc.sets[i].end());
    }
    if (covered == universe) best = std::min<int64_t>(best, std::popcount(mask));
  }
  return best;
}

// Random rules with up to `max_atoms` premise atoms (builtins included) over
// R/1, S/2 and Q/2,
// with shared variables, constants and the occasional builtin. The premise
// stays at or below `max_facts` facts over a small domain.
struct RandomCase {
  RuleSet rules;
  DataExample example;
};

inline Value SmallValue(Rng& rng) {
  static const char* const kTexts[] = {"a", "b", "c", "a b", "b c"};
  if (rng.Chance(0.5)) return Value::Int(rng.Between(1, 3));
  return Value::Text(kTexts[rng.Below(5)]);
}

inline RandomCase RandomEvalCase(uint64_t seed, int num_rules, int max_atoms,
                                 int max_facts) {
  Rng rng(seed);
  static const char* const kVars[] = {"x", "y", "z"};
  const std::vector<std::pair<std::string, size_t>> relations = {
      {"R", 1}, {"S", 2}, {"Q", 2}};
  RandomCase out;
  std::vector<Rule> rules;
  for (int r = 0; r < num_rules; ++r) {
    Rule rule{"r" + std::to_string(r + 1), {}, {}};
    int atoms = rng.Between(1, max_atoms);
    std::set<std::string> bound;
    for (int a = 0; a < atoms; ++a) {
      const auto& [name, arity] = relations[rng.Below(relations.size())];
      std::vector<Term> terms;
      for (size_t k = 0; k < arity; ++k) {
        if (rng.Chance(0.2)) {
          terms.push_back(Term::Const(SmallValue(rng)));
        } else {
          std::string v = kVars[rng.Below(3)];
          bound.insert(v);
          terms.push_back(Term::Var(v));
        }
      }
      rule.premise.push_back(Atom::Relational(name, std::move(terms)));
    }
    std::vector<std::string> vars(bound.begin(), bound.end());
    if (vars.empty()) {
      rule.premise.back() = Atom::Relational("R", {Term::Var("x")});
      vars.push_back("x");
    }
    const bool room = static_cast<int>(rule.premise.size()) < max_atoms;
    if (room && vars.size() >= 2 && rng.Chance(0.3)) {
      static const char* const kCompare[] = {"neq", "eq", "geq", "leq"};
      rule.premise.push_back(Atom::Builtin(kCompare[rng.Below(4)],
                                           {Term::Var(vars[0]), Term::Var(vars[1])}));
    } else if (room && vars.size() >= 2 && rng.Chance(0.2)) {
      rule.premise.push_back(Atom::Builtin("jaccard_geq",
                                           {Term::Var(vars[0]), Term::Var(vars[1])},
                                           Decimal::Parse("0.5")));
    }
    std::vector<Term> head;
    head.push_back(Term::Var(vars[rng.Below(vars.size())]));
    if (rng.Chance(0.5)) head.push_back(Term::Var(vars[rng.Below(vars.size())]));
    std::string conclusion = head.size() == 1 ? "T" : "U";
    rule.conclusion = Atom::Relational(conclusion, std::move(head));
    rules.push_back(std::move(rule));
  }
  out.rules = RuleSet::FromRules(std::move(rules));

  for (const auto& [name, arity] : relations) out.example.premise.DeclareRelation(name, arity);
  int facts = rng.Between(0, max_facts);
  for (int i = 0; i < facts; ++i) {
    const auto& [name, arity] = relations[rng.Below(relations.size())];
    Fact f{name, {}};
    for (size_t k = 0; k < arity; ++k) f.args.push_back(SmallValue(rng));
    out.example.premise.Insert(f);
  }
  for (const auto& [name, arity] : out.rules.conclusion_schema) {
    out.example.truth.DeclareRelation(name, arity);
  }
  for (const Rule& r : out.rules.rules) {
    for (const Fact& f : NaiveEval(r, out.example.premise)) {
      if (rng.Chance(0.6)) out.example.truth.Insert(f);
    }
  }
  if (out.rules.conclusion_schema.count("T") && rng.Chance(0.5)) {
    out.example.truth.Insert(Fact{"T", {Value::Text("zz")}});
  }
  return out;
}

// Random Positive-Negative instance with sets labeled S1..Sn.
inline PnpscInstance RandomPnpsc(uint64_t seed, int num_sets, int num_positive,
                                 int num_negative) {
  Rng rng(seed);
  PnpscInstance inst;
  for (int i = 1; i <= num_positive; ++i) inst.positive.insert("p" + std::to_string(i));
  for (int i = 1; i <= num_negative; ++i) inst.negative.insert("q" + std::to_string(i));
  for (int i = 1; i <= num_sets; ++i) {
    LabeledSet s{"S" + std::to_string(i), {}};
    for (const std::string& e : inst.positive) {
      if (rng.Chance(0.4)) s.elements.insert(e);
    }
    for (const std::string& e : inst.negative) {
      if (rng.Chance(0.3)) s.elements.insert(e);
    }
    inst.back_map[s.label] = SetOrigin{SetOrigin::Kind::kRule, s.label};
    inst.sets.push_back(std::move(s));
  }
  return inst;
}

// Rule-selection instance through the production generator, sized for
// exhaustive checks.
inline GeneratedInstance SmallSelectionCase(uint64_t seed, size_t num_rules,
                                            size_t domain, double fn_noise) {
  GenSeed g;
  g.seed = seed;
  g.num_rules = num_rules;
  g.domain_size = domain;
  g.num_unary = 4;
  g.num_binary = 2;
  g.density = 0.35;
  g.fp_noise = 0.3;
  g.fn_noise = fn_noise;
  return GenerateRandomRuleSelection(g);
}

}  // namespace rulesel::oracle

#endif  // RULESEL_TESTS_ORACLES_H_
