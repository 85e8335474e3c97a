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

#include "rulesel/exact.h"

#include <bit>
#include <limits>
#include <map>

#include "rulesel/eval.h"
#include "rulesel/parser.h"

namespace rulesel {
namespace {

using Word = uint64_t;
using Bits = std::vector<Word>;

int64_t CountAndNot(const Word* a, const Word* b, size_t words) {
  int64_t n = 0;
  for (size_t w = 0; w < words; ++w) n += std::popcount(a[w] & ~b[w]);
  return n;
}

// Per-rule outputs as bit vectors over the universe, plus the enumeration
// machinery shared by all exact procedures.
class SubsetSpace {
 public:
  SubsetSpace(const RuleSet& rules, const DataExample& example,
              const ExactConfig& config)
      : rules_(rules), objective_(config.objective) {
    if (rules.size() > config.max_rules) {
      throw CapacityError(rules.size(), config.max_rules);
    }
    EvalCache cache = EvalCache::Build(rules, example.premise, config.limits);
    if (objective_ == Objective::kFp) {
      Feasibility feasibility = CheckFpFeasible(rules, example, &cache);
      if (!feasibility.ok) throw InfeasibleError(std::move(feasibility.missing));
    }

    FactSet universe = cache.Union();
    universe.insert(example.truth.facts().begin(), example.truth.facts().end());
    std::map<Fact, size_t> position;
    for (const Fact& f : universe) position.emplace(f, position.size());
    words_ = (universe.size() + 63) / 64;

    auto mask_of = [&](const FactSet& facts) {
      Bits bits(words_, 0);
      for (const Fact& f : facts) {
        size_t p = position.at(f);
        bits[p / 64] |= Word{1} << (p % 64);
      }
      return bits;
    };
    truth_ = mask_of(example.truth.facts());
    for (size_t i = 0; i < rules.size(); ++i) {
      rule_bits_.push_back(mask_of(cache.RuleOutput(i)));
      rule_sizes_.push_back(RuleSize(rules.rules[i]));
    }
  }

  size_t num_rules() const { return rule_bits_.size(); }

  // Error of one selection mask, or nullopt if FP mode rejects it.
  std::optional<int64_t> ErrorOf(const std::vector<bool>& chosen) const {
    Bits produced(words_, 0);
    for (size_t i = 0; i < chosen.size(); ++i) {
      if (!chosen[i]) continue;
      for (size_t w = 0; w < words_; ++w) produced[w] |= rule_bits_[i][w];
    }
    return Score(produced.data());
  }

  int64_t SizeOf(const std::vector<bool>& chosen) const {
    int64_t size = 0;
    for (size_t i = 0; i < chosen.size(); ++i) size += chosen[i] ? rule_sizes_[i] : 0;
    return size;
  }

  Selection SelectionOf(const std::vector<bool>& chosen) const {
    Selection s;
    for (size_t i = 0; i < chosen.size(); ++i) {
      if (chosen[i]) s.chosen.insert(rules_.rules[i].name);
    }
    return s;
  }

  // Visits every selection in canonical order. `visit(chosen, error, size)`
  // is skipped for selections FP mode rejects. When `prune_above` is set, a
  // branch is cut once its FP count exceeds *prune_above (which the visitor
  // may lower as it goes).
  template <typename Visitor>
  void Enumerate(Visitor&& visit, const int64_t* prune_above) const {
    const size_t n = num_rules();
    std::vector<Bits> stack(n + 1, Bits(words_, 0));
    std::vector<bool> chosen(n, false);
    Recurse(n, 0, stack, chosen, visit, prune_above);
  }

 private:
  std::optional<int64_t> Score(const Word* produced) const {
    int64_t fp = CountAndNot(produced, truth_.data(), words_);
    int64_t fn = CountAndNot(truth_.data(), produced, words_);
    if (objective_ == Objective::kFp) {
      if (fn > 0) return std::nullopt;
      return fp;
    }
    return fp + fn;
  }

  // `remaining` rules (indices 0..remaining-1) are still undecided; the
  // union so far is stack[remaining].
  template <typename Visitor>
  void Recurse(size_t remaining, int64_t size, std::vector<Bits>& stack,
               std::vector<bool>& chosen, Visitor& visit,
               const int64_t* prune_above) const {
    const Bits& current = stack[remaining];
    if (prune_above != nullptr &&
        CountAndNot(current.data(), truth_.data(), words_) > *prune_above) {
      return;
    }
    if (remaining == 0) {
      if (auto error = Score(current.data())) visit(chosen, *error, size);
      return;
    }
    const size_t rule = remaining - 1;
    stack[rule] = current;
    Recurse(rule, size, stack, chosen, visit, prune_above);

    Bits& with = stack[rule];
    const Bits& base = stack[remaining];
    for (size_t w = 0; w < words_; ++w) with[w] = base[w] | rule_bits_[rule][w];
    chosen[rule] = true;
    Recurse(rule, size + rule_sizes_[rule], stack, chosen, visit, prune_above);
    chosen[rule] = false;
  }

  const RuleSet& rules_;
  Objective objective_;
  size_t words_ = 0;
  Bits truth_;
  std::vector<Bits> rule_bits_;
  std::vector<int64_t> rule_sizes_;
};

std::vector<bool> MaskOf(const RuleSet& rules, const Selection& selection) {
  std::vector<bool> chosen(rules.size(), false);
  for (size_t i : ResolveSelection(rules, selection)) chosen[i] = true;
  return chosen;
}

struct FrontEntry {
  int64_t size;
  std::vector<bool> witness;
};

// Minimum size (with first witness) for every reachable error value.
std::map<int64_t, FrontEntry> BestSizeByError(const SubsetSpace& space) {
  std::map<int64_t, FrontEntry> best;
  space.Enumerate(
      [&](const std::vector<bool>& chosen, int64_t error, int64_t size) {
        auto it = best.find(error);
        if (it == best.end()) {
          best.emplace(error, FrontEntry{size, chosen});
        } else if (size < it->second.size) {
          it->second = FrontEntry{size, chosen};
        }
      },
      nullptr);
  return best;
}

FrontResult BuildFront(const SubsetSpace& space, const RuleSet& rules,
                       const DataExample& example) {
  FrontResult front;
  front.digest = Fingerprint(rules, example);
  int64_t smallest = std::numeric_limits<int64_t>::max();
  for (const auto& [error, entry] : BestSizeByError(space)) {
    // Ascending error: a point survives only if it is strictly smaller than
    // every point with lower error.
    if (entry.size < smallest) {
      smallest = entry.size;
      front.points.push_back({error, entry.size, space.SelectionOf(entry.witness)});
    }
  }
  return front;
}

}  // namespace

ExactResult SolveExact(const RuleSet& rules, const DataExample& example,
                       const ExactConfig& config) {
  SubsetSpace space(rules, example, config);
  int64_t best = std::numeric_limits<int64_t>::max();
  std::vector<bool> witness;
  bool found = false;
  space.Enumerate(
      [&](const std::vector<bool>& chosen, int64_t error, int64_t) {
        if (!found || error < best) {
          best = error;
          witness = chosen;
          found = true;
        }
      },
      config.prune ? &best : nullptr);
  // Infeasible FP instances were rejected above and the full selection is
  // always admissible, so `found` holds here.
  ExactResult result;
  result.error = best;
  result.size = space.SizeOf(witness);
  result.witness = space.SelectionOf(witness);
  return result;
}

bool DecisionBound(const RuleSet& rules, const DataExample& example, int64_t k,
                   const ExactConfig& config) {
  return SolveExact(rules, example, config).error <= k;
}

bool DecisionExactValue(const RuleSet& rules, const DataExample& example,
                        int64_t k, const ExactConfig& config) {
  return SolveExact(rules, example, config).error == k;
}

FrontResult ParetoFront(const RuleSet& rules, const DataExample& example,
                        const ExactConfig& config) {
  SubsetSpace space(rules, example, config);
  return BuildFront(space, rules, example);
}

bool IsParetoOptimal(const RuleSet& rules, const DataExample& example,
                     const Selection& candidate, const ExactConfig& config) {
  SubsetSpace space(rules, example, config);
  std::vector<bool> chosen = MaskOf(rules, candidate);
  std::optional<int64_t> error = space.ErrorOf(chosen);
  if (!error) return false;
  int64_t size = space.SizeOf(chosen);
  for (const ParetoPoint& p : BuildFront(space, rules, example).points) {
    if (p.error == *error && p.size == size) return true;
  }
  return false;
}

bool ParetoMembership(const RuleSet& rules, const DataExample& example,
                      int64_t error, int64_t size, const ExactConfig& config) {
  for (const ParetoPoint& p : ParetoFront(rules, example, config).points) {
    if (p.error == error && p.size == size) return true;
  }
  return false;
}

BilevelResult BilevelOptimum(const RuleSet& rules, const DataExample& example,
                             const ExactConfig& config) {
  FrontResult front = ParetoFront(rules, example, config);
  // The lowest-error front point has the minimum size among minimum-error
  // selections.
  const ParetoPoint& first = front.points.front();
  return BilevelResult{first.error, first.size, *first.witness};
}

bool IsBilevelOptimal(const RuleSet& rules, const DataExample& example,
                      const Selection& candidate, const ExactConfig& config) {
  SubsetSpace space(rules, example, config);
  std::vector<bool> chosen = MaskOf(rules, candidate);
  std::optional<int64_t> error = space.ErrorOf(chosen);
  if (!error) return false;
  const ParetoPoint first = BuildFront(space, rules, example).points.front();
  return *error == first.error && space.SizeOf(chosen) == first.size;
}

}  // namespace rulesel
