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

#include "rulesel/eval.h"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <unordered_map>
#include <vector>

#include "rulesel/builtins.h"

namespace rulesel {
namespace {

using ValueId = uint32_t;

// Premise instance with values replaced by dense ids and each relation
// stored as a flat row-major tuple array.
class InternedInstance {
 public:
  struct Relation {
    size_t arity = 0;
    size_t count = 0;
    std::vector<ValueId> cells;

    const ValueId* Row(size_t i) const { return cells.data() + i * arity; }
  };

  explicit InternedInstance(const Instance& instance) {
    for (const auto& [name, arity] : instance.schema()) {
      relations_[name].arity = arity;
    }
    for (const Fact& fact : instance.facts()) {
      Relation& rel = relations_[fact.relation];
      for (const Value& v : fact.args) rel.cells.push_back(Intern(v));
      ++rel.count;
    }
  }

  const Relation* Find(const std::string& name) const {
    auto it = relations_.find(name);
    return it == relations_.end() ? nullptr : &it->second;
  }

  std::optional<ValueId> Lookup(const Value& v) const {
    auto it = ids_.find(v);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const Value& value(ValueId id) const { return values_[id]; }

 private:
  ValueId Intern(const Value& v) {
    auto [it, inserted] = ids_.emplace(v, static_cast<ValueId>(values_.size()));
    if (inserted) values_.push_back(v);
    return it->second;
  }

  std::map<Value, ValueId> ids_;
  std::vector<Value> values_;
  std::map<std::string, Relation> relations_;
};

struct KeyHash {
  size_t operator()(const std::vector<ValueId>& key) const {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (ValueId v : key) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
  }
};

constexpr size_t kNoVar = std::numeric_limits<size_t>::max();

// One argument position of a relational atom in a compiled plan.
struct Slot {
  enum class Mode { kKey, kBind, kCheck };
  Mode mode;
  size_t var = kNoVar;  // kNoVar for constants
  ValueId constant = 0;
};

struct PlannedAtom {
  const InternedInstance::Relation* relation;
  std::vector<Slot> slots;
  std::vector<size_t> key_positions;
  std::unordered_map<std::vector<ValueId>, std::vector<uint32_t>, KeyHash>
      index;
  std::vector<size_t> builtins_after;  // builtins fully bound after this atom
};

struct BuiltinArg {
  size_t var = kNoVar;
  Value constant;
};

struct PlannedBuiltin {
  const BuiltinSpec* spec;
  std::vector<BuiltinArg> args;
  std::optional<Decimal> threshold;
};

class RuleEvaluator {
 public:
  RuleEvaluator(const Rule& rule, const InternedInstance& db)
      : rule_(rule), db_(db) {}

  FactSet Run() {
    if (!Compile()) return {};
    for (size_t b : upfront_builtins_) {
      if (!Holds(builtins_[b])) return {};
    }
    assignment_.assign(num_vars_, 0);
    Search(0);
    return std::move(output_);
  }

 private:
  size_t VarIndex(const std::string& name) {
    auto [it, inserted] = var_index_.emplace(name, num_vars_);
    if (inserted) ++num_vars_;
    return it->second;
  }

  // Returns false when some relational atom can never match.
  bool Compile() {
    struct RawAtom {
      const InternedInstance::Relation* relation;
      const Atom* atom;
      size_t premise_pos;
    };
    std::vector<RawAtom> raw;
    bool satisfiable = true;
    for (size_t i = 0; i < rule_.premise.size(); ++i) {
      const Atom& atom = rule_.premise[i];
      if (atom.is_builtin()) continue;
      const auto* rel = db_.Find(atom.name);
      if (rel != nullptr && rel->arity != atom.terms.size()) {
        throw Error(ErrorCode::kEvaluation,
                    "rule " + rule_.name + ": relation " + atom.name +
                        " has arity " + std::to_string(rel->arity) +
                        " in the premise instance, not " +
                        std::to_string(atom.terms.size()));
      }
      if (rel == nullptr || rel->count == 0) satisfiable = false;
      for (const Term& t : atom.terms) {
        if (t.is_variable()) {
          VarIndex(t.variable().name);
        } else if (!db_.Lookup(t.constant())) {
          satisfiable = false;
        }
      }
      raw.push_back({rel, &atom, i});
    }
    if (!satisfiable) return false;

    // Greedy join order: most already-bound variables, then smallest
    // relation, then premise order.
    std::vector<bool> bound(num_vars_, false);
    std::vector<bool> used(raw.size(), false);
    std::vector<size_t> bind_step(num_vars_, 0);
    for (size_t step = 0; step < raw.size(); ++step) {
      size_t best = raw.size();
      size_t best_bound = 0;
      for (size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        std::vector<size_t> seen;
        for (const Term& t : raw[i].atom->terms) {
          if (!t.is_variable()) continue;
          size_t v = var_index_.at(t.variable().name);
          if (bound[v] && std::find(seen.begin(), seen.end(), v) == seen.end()) {
            seen.push_back(v);
          }
        }
        bool better =
            best == raw.size() || seen.size() > best_bound ||
            (seen.size() == best_bound &&
             raw[i].relation->count < raw[best].relation->count);
        if (better) {
          best = i;
          best_bound = seen.size();
        }
      }
      used[best] = true;

      PlannedAtom planned;
      planned.relation = raw[best].relation;
      std::vector<bool> bound_here = bound;
      const auto& terms = raw[best].atom->terms;
      for (size_t pos = 0; pos < terms.size(); ++pos) {
        const Term& t = terms[pos];
        Slot slot;
        if (t.is_constant()) {
          slot.mode = Slot::Mode::kKey;
          slot.constant = *db_.Lookup(t.constant());
        } else {
          slot.var = var_index_.at(t.variable().name);
          if (bound[slot.var]) {
            slot.mode = Slot::Mode::kKey;
          } else if (bound_here[slot.var]) {
            slot.mode = Slot::Mode::kCheck;
          } else {
            slot.mode = Slot::Mode::kBind;
            bound_here[slot.var] = true;
            bind_step[slot.var] = step;
          }
        }
        if (slot.mode == Slot::Mode::kKey) planned.key_positions.push_back(pos);
        planned.slots.push_back(slot);
      }
      bound = bound_here;
      BuildIndex(planned);
      plan_.push_back(std::move(planned));
    }

    // Builtins run right after the atom that binds their last variable.
    const BuiltinRegistry& registry = BuiltinRegistry::Default();
    for (const Atom& atom : rule_.premise) {
      if (!atom.is_builtin()) continue;
      PlannedBuiltin b{registry.Find(atom.name), {}, atom.threshold};
      bool has_var = false;
      size_t last_step = 0;
      for (const Term& t : atom.terms) {
        if (t.is_variable()) {
          size_t v = var_index_.at(t.variable().name);
          b.args.push_back({v, Value()});
          has_var = true;
          last_step = std::max(last_step, bind_step[v]);
        } else {
          b.args.push_back({kNoVar, t.constant()});
        }
      }
      builtins_.push_back(std::move(b));
      if (has_var) {
        plan_[last_step].builtins_after.push_back(builtins_.size() - 1);
      } else {
        upfront_builtins_.push_back(builtins_.size() - 1);
      }
    }
    return true;
  }

  void BuildIndex(PlannedAtom& planned) const {
    if (planned.key_positions.empty()) return;
    const auto& rel = *planned.relation;
    std::vector<ValueId> key(planned.key_positions.size());
    for (size_t row = 0; row < rel.count; ++row) {
      const ValueId* r = rel.Row(row);
      for (size_t k = 0; k < key.size(); ++k) key[k] = r[planned.key_positions[k]];
      planned.index[key].push_back(static_cast<uint32_t>(row));
    }
  }

  bool Holds(const PlannedBuiltin& b) const {
    std::vector<Value> args;
    args.reserve(b.args.size());
    for (const BuiltinArg& a : b.args) {
      args.push_back(a.var == kNoVar ? a.constant : db_.value(assignment_[a.var]));
    }
    return b.spec->predicate(args, b.threshold);
  }

  void Search(size_t step) {
    if (step == plan_.size()) {
      Emit();
      return;
    }
    const PlannedAtom& atom = plan_[step];
    const auto& rel = *atom.relation;

    auto try_row = [&](size_t row) {
      const ValueId* r = rel.Row(row);
      for (size_t pos = 0; pos < atom.slots.size(); ++pos) {
        const Slot& slot = atom.slots[pos];
        if (slot.mode == Slot::Mode::kBind) {
          assignment_[slot.var] = r[pos];
        } else if (slot.mode == Slot::Mode::kCheck &&
                   assignment_[slot.var] != r[pos]) {
          return;
        }
      }
      for (size_t b : atom.builtins_after) {
        if (!Holds(builtins_[b])) return;
      }
      Search(step + 1);
    };

    if (atom.key_positions.empty()) {
      for (size_t row = 0; row < rel.count; ++row) try_row(row);
      return;
    }
    std::vector<ValueId> key;
    key.reserve(atom.key_positions.size());
    for (size_t pos : atom.key_positions) {
      const Slot& slot = atom.slots[pos];
      key.push_back(slot.var == kNoVar ? slot.constant : assignment_[slot.var]);
    }
    auto it = atom.index.find(key);
    if (it == atom.index.end()) return;
    for (uint32_t row : it->second) try_row(row);
  }

  void Emit() {
    Fact fact{rule_.conclusion.name, {}};
    fact.args.reserve(rule_.conclusion.terms.size());
    for (const Term& t : rule_.conclusion.terms) {
      fact.args.push_back(
          t.is_constant()
              ? t.constant()
              : db_.value(assignment_[var_index_.at(t.variable().name)]));
    }
    output_.insert(std::move(fact));
  }

  const Rule& rule_;
  const InternedInstance& db_;
  std::map<std::string, size_t> var_index_;
  size_t num_vars_ = 0;
  std::vector<PlannedAtom> plan_;
  std::vector<PlannedBuiltin> builtins_;
  std::vector<size_t> upfront_builtins_;
  std::vector<ValueId> assignment_;
  FactSet output_;
};

FactSet Difference(const FactSet& a, const FactSet& b) {
  FactSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

}  // namespace

FactSet EvalRule(const Rule& rule, const Instance& premise) {
  ValidateOrThrow(RuleSet::FromRules({rule}), std::nullopt);
  InternedInstance db(premise);
  return RuleEvaluator(rule, db).Run();
}

EvalCache EvalCache::Build(const RuleSet& rules, const Instance& premise,
                           const EvalLimits& limits) {
  ValidateOrThrow(rules, limits);
  InternedInstance db(premise);
  EvalCache cache;
  cache.premise_size_ = premise.size();
  for (const Rule& rule : rules.rules) {
    cache.rule_names_.push_back(rule.name);
    cache.outputs_.push_back(RuleEvaluator(rule, db).Run());
    cache.union_.insert(cache.outputs_.back().begin(),
                        cache.outputs_.back().end());
  }
  return cache;
}

bool EvalCache::Matches(const RuleSet& rules, const Instance& premise) const {
  if (premise.size() != premise_size_ || rules.size() != rule_names_.size()) {
    return false;
  }
  for (size_t i = 0; i < rules.size(); ++i) {
    if (rules.rules[i].name != rule_names_[i]) return false;
  }
  return true;
}

FactSet EvalRuleSet(const RuleSet& rules, const Selection& selection,
                    const Instance& premise, const EvalCache* cache) {
  std::vector<size_t> chosen = ResolveSelection(rules, selection);
  std::optional<EvalCache> local;
  if (cache == nullptr) {
    local = EvalCache::Build(rules, premise);
    cache = &*local;
  } else if (!cache->Matches(rules, premise)) {
    throw Error(ErrorCode::kInternal,
                "evaluation cache was built for a different rule set or "
                "premise instance");
  }
  FactSet out;
  for (size_t index : chosen) {
    const FactSet& part = cache->RuleOutput(index);
    out.insert(part.begin(), part.end());
  }
  return out;
}

ErrorReport ComputeErrors(const RuleSet& rules, const Selection& selection,
                          const DataExample& example, const EvalCache* cache) {
  FactSet produced = EvalRuleSet(rules, selection, example.premise, cache);
  ErrorReport report;
  report.fp = Difference(produced, example.truth.facts());
  report.fn = Difference(example.truth.facts(), produced);
  report.fp_count = static_cast<int64_t>(report.fp.size());
  report.fn_count = static_cast<int64_t>(report.fn.size());
  report.total = report.fp_count + report.fn_count;
  return report;
}

Feasibility CheckFpFeasible(const RuleSet& rules, const DataExample& example,
                            const EvalCache* cache) {
  FactSet produced =
      EvalRuleSet(rules, Selection::All(rules), example.premise, cache);
  Feasibility result;
  result.missing = Difference(example.truth.facts(), produced);
  result.ok = result.missing.empty();
  return result;
}

}  // namespace rulesel
