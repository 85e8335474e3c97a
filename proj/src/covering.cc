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

#include "rulesel/covering.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_map>

namespace rulesel {
namespace {

std::vector<LabeledSet> RuleSets(const RuleSet& rules, const EvalCache& cache,
                                 BackMap& back_map) {
  std::vector<LabeledSet> sets;
  for (size_t i = 0; i < rules.size(); ++i) {
    LabeledSet s{rules.rules[i].name, {}};
    for (const Fact& f : cache.RuleOutput(i)) s.elements.insert(ElementId(f));
    back_map[s.label] = {SetOrigin::Kind::kRule, s.label};
    sets.push_back(std::move(s));
  }
  return sets;
}

void SplitProduced(const DataExample& example, const EvalCache& cache,
                   ElementSet& truth, ElementSet& spurious) {
  for (const Fact& f : example.truth.facts()) truth.insert(ElementId(f));
  for (const Fact& f : cache.Union()) {
    if (!example.truth.Contains(f)) spurious.insert(ElementId(f));
  }
}

void CheckCacheFor(const RuleSet& rules, const DataExample& example,
                   const EvalCache& cache) {
  if (!cache.Matches(rules, example.premise)) {
    throw Error(ErrorCode::kInternal,
                "evaluation cache was built for a different rule set or "
                "premise instance");
  }
}

// Dense form of a Red-Blue instance: per set, the blue and red element
// indices it contains. Set order follows the labels.
struct DenseSystem {
  size_t num_blue = 0;
  size_t num_red = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<uint32_t>> blue_of;
  std::vector<std::vector<uint32_t>> red_of;
};

DenseSystem Densify(const RbscInstance& instance) {
  for (const std::string& r : instance.red) {
    if (instance.blue.count(r)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "element " + r + " is both red and blue");
    }
  }
  std::unordered_map<std::string, uint32_t> blue_index;
  std::unordered_map<std::string, uint32_t> red_index;
  for (const std::string& b : instance.blue) {
    blue_index.emplace(b, static_cast<uint32_t>(blue_index.size()));
  }
  for (const std::string& r : instance.red) {
    red_index.emplace(r, static_cast<uint32_t>(red_index.size()));
  }

  std::vector<size_t> order(instance.sets.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return instance.sets[a].label < instance.sets[b].label;
  });

  DenseSystem dense;
  dense.num_blue = blue_index.size();
  dense.num_red = red_index.size();
  for (size_t k = 0; k < order.size(); ++k) {
    const LabeledSet& s = instance.sets[order[k]];
    if (k > 0 && s.label == dense.labels.back()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate set label " + s.label);
    }
    dense.labels.push_back(s.label);
    std::vector<uint32_t> blue, red;
    for (const std::string& e : s.elements) {
      if (auto it = blue_index.find(e); it != blue_index.end()) {
        blue.push_back(it->second);
      } else if (auto jt = red_index.find(e); jt != red_index.end()) {
        red.push_back(jt->second);
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "set " + s.label + " contains " + e +
                        ", which is neither red nor blue");
      }
    }
    dense.blue_of.push_back(std::move(blue));
    dense.red_of.push_back(std::move(red));
  }
  return dense;
}

struct Candidate {
  int64_t covered_red = 0;
  std::vector<std::string> labels;  // sorted

  // Fewest reds, then fewest sets, then lexicographic label list.
  bool BetterThan(const Candidate& other) const {
    if (covered_red != other.covered_red) return covered_red < other.covered_red;
    if (labels.size() != other.labels.size()) {
      return labels.size() < other.labels.size();
    }
    return labels < other.labels;
  }
};

// Greedy cover of all blue elements using only sets with at most
// `threshold` reds. Returns nullopt if those sets do not cover blue.
std::optional<Candidate> GreedyPass(const DenseSystem& dense,
                                    int64_t threshold) {
  const size_t num_sets = dense.labels.size();
  std::vector<bool> allowed(num_sets);
  std::vector<bool> reachable(dense.num_blue, false);
  for (size_t s = 0; s < num_sets; ++s) {
    allowed[s] = static_cast<int64_t>(dense.red_of[s].size()) <= threshold;
    if (!allowed[s]) continue;
    for (uint32_t b : dense.blue_of[s]) reachable[b] = true;
  }
  if (std::find(reachable.begin(), reachable.end(), false) != reachable.end()) {
    return std::nullopt;
  }

  std::vector<bool> blue_done(dense.num_blue, false);
  std::vector<bool> red_done(dense.num_red, false);
  std::vector<bool> taken(num_sets, false);
  size_t remaining = dense.num_blue;
  Candidate result;
  while (remaining > 0) {
    size_t best = num_sets;
    int64_t best_blue = 0;
    int64_t best_red = 0;
    for (size_t s = 0; s < num_sets; ++s) {
      if (!allowed[s] || taken[s]) continue;
      int64_t new_blue = 0;
      for (uint32_t b : dense.blue_of[s]) new_blue += blue_done[b] ? 0 : 1;
      if (new_blue == 0) continue;
      int64_t new_red = 0;
      for (uint32_t r : dense.red_of[s]) new_red += red_done[r] ? 0 : 1;

      bool better;
      if (best == num_sets) {
        better = true;
      } else if ((new_red == 0) != (best_red == 0)) {
        better = new_red == 0;
      } else if (new_red * best_blue != best_red * new_blue) {
        // Both ratios are 0 only when both reds are 0; handled by the tie.
        better = new_red * best_blue < best_red * new_blue;
      } else {
        // Sets are in label order, so keeping the earlier one on a full tie
        // is the label tie-break.
        better = new_blue > best_blue;
      }
      if (better) {
        best = s;
        best_blue = new_blue;
        best_red = new_red;
      }
    }
    taken[best] = true;
    for (uint32_t b : dense.blue_of[best]) {
      if (!blue_done[b]) {
        blue_done[b] = true;
        --remaining;
      }
    }
    for (uint32_t r : dense.red_of[best]) {
      if (!red_done[r]) {
        red_done[r] = true;
        ++result.covered_red;
      }
    }
    result.labels.push_back(dense.labels[best]);
  }
  std::sort(result.labels.begin(), result.labels.end());
  return result;
}

std::string FreshName(std::string base, const ElementSet& taken,
                      const ElementSet& also_taken) {
  while (taken.count(base) || also_taken.count(base)) base += "'";
  return base;
}

std::map<std::string, const LabeledSet*> LabelIndex(
    const std::vector<LabeledSet>& sets) {
  std::map<std::string, const LabeledSet*> index;
  for (const LabeledSet& s : sets) index[s.label] = &s;
  return index;
}

ElementSet UnionOf(const std::vector<LabeledSet>& sets,
                   const std::vector<std::string>& labels) {
  auto index = LabelIndex(sets);
  ElementSet out;
  for (const std::string& label : labels) {
    auto it = index.find(label);
    if (it == index.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown set label " + label);
    }
    out.insert(it->second->elements.begin(), it->second->elements.end());
  }
  return out;
}

}  // namespace

RbscInstance BuildRbsc(const RuleSet& rules, const DataExample& example,
                       const EvalCache& cache) {
  CheckCacheFor(rules, example, cache);
  Feasibility feasibility = CheckFpFeasible(rules, example, &cache);
  if (!feasibility.ok) throw InfeasibleError(std::move(feasibility.missing));
  RbscInstance instance;
  SplitProduced(example, cache, instance.blue, instance.red);
  instance.sets = RuleSets(rules, cache, instance.back_map);
  return instance;
}

PnpscInstance BuildPnpsc(const RuleSet& rules, const DataExample& example,
                         const EvalCache& cache) {
  CheckCacheFor(rules, example, cache);
  PnpscInstance instance;
  SplitProduced(example, cache, instance.positive, instance.negative);
  instance.sets = RuleSets(rules, cache, instance.back_map);
  return instance;
}

RbscInstance PnpscToRbsc(const PnpscInstance& instance) {
  RbscInstance out;
  out.blue = instance.positive;
  out.red = instance.negative;
  out.sets = instance.sets;
  out.back_map = instance.back_map;

  ElementSet labels;
  for (const LabeledSet& s : instance.sets) labels.insert(s.label);
  for (const std::string& p : instance.positive) {
    std::string marker = FreshName("n_" + p, out.red, out.blue);
    out.red.insert(marker);
    std::string label = FreshName("skip(" + p + ")", labels, {});
    labels.insert(label);
    out.sets.push_back({label, {p, marker}});
    out.back_map[label] = {SetOrigin::Kind::kSkip, p};
  }
  return out;
}

std::vector<int64_t> GreedyThresholds(const RbscInstance& instance,
                                      const GreedyConfig& config) {
  int64_t max_red = 0;
  std::set<int64_t> counts;
  for (const LabeledSet& s : instance.sets) {
    int64_t reds = 0;
    for (const std::string& e : s.elements) reds += instance.red.count(e);
    counts.insert(reds);
    max_red = std::max(max_red, reds);
  }
  std::set<int64_t> schedule = {0, max_red};
  if (config.schedule != ThresholdSchedule::kExactCounts) {
    for (int64_t t = 1; t <= max_red; t *= 2) schedule.insert(t);
  }
  if (config.schedule != ThresholdSchedule::kPowersOfTwo && counts.size() <= 64) {
    schedule.insert(counts.begin(), counts.end());
  }
  return {schedule.begin(), schedule.end()};
}

CoverSelection SolveRbscGreedy(const RbscInstance& instance,
                               const GreedyConfig& config) {
  DenseSystem dense = Densify(instance);
  std::vector<bool> coverable(dense.num_blue, false);
  for (const auto& blue : dense.blue_of) {
    for (uint32_t b : blue) coverable[b] = true;
  }
  size_t i = 0;
  for (const std::string& b : instance.blue) {
    if (!coverable[i++]) throw UncoverableError(b);
  }

  std::optional<Candidate> best;
  for (int64_t threshold : GreedyThresholds(instance, config)) {
    std::optional<Candidate> candidate = GreedyPass(dense, threshold);
    if (candidate && (!best || candidate->BetterThan(*best))) {
      best = std::move(candidate);
    }
  }
  // The largest threshold admits every set, so some pass succeeded.
  return EvaluateRbscCover(instance, best->labels);
}

CoverSelection SolvePnpscApprox(const PnpscInstance& instance,
                                const GreedyConfig& config) {
  RbscInstance reduced = PnpscToRbsc(instance);
  CoverSelection cover = SolveRbscGreedy(reduced, config);
  std::vector<std::string> kept;
  for (const std::string& label : cover.chosen) {
    if (reduced.back_map.at(label).kind != SetOrigin::Kind::kSkip) {
      kept.push_back(label);
    }
  }
  return EvaluatePnpscCover(instance, kept);
}

CoverSelection EvaluateRbscCover(const RbscInstance& instance,
                                 const std::vector<std::string>& labels) {
  CoverSelection out;
  out.chosen = labels;
  std::sort(out.chosen.begin(), out.chosen.end());
  out.chosen.erase(std::unique(out.chosen.begin(), out.chosen.end()),
                   out.chosen.end());
  for (const std::string& e : UnionOf(instance.sets, out.chosen)) {
    if (instance.blue.count(e)) out.covered_blue.insert(e);
    if (instance.red.count(e)) ++out.covered_red;
  }
  out.cost = out.covered_red;
  return out;
}

CoverSelection EvaluatePnpscCover(const PnpscInstance& instance,
                                  const std::vector<std::string>& labels) {
  CoverSelection out;
  out.chosen = labels;
  std::sort(out.chosen.begin(), out.chosen.end());
  out.chosen.erase(std::unique(out.chosen.begin(), out.chosen.end()),
                   out.chosen.end());
  ElementSet covered = UnionOf(instance.sets, out.chosen);
  for (const std::string& p : instance.positive) {
    if (covered.count(p)) {
      out.covered_blue.insert(p);
    } else {
      out.uncovered_positive.insert(p);
    }
  }
  for (const std::string& n : instance.negative) {
    if (covered.count(n)) out.covered_negative.insert(n);
  }
  out.covered_red = static_cast<int64_t>(out.covered_negative.size());
  out.cost = static_cast<int64_t>(out.uncovered_positive.size() +
                                  out.covered_negative.size());
  return out;
}

Selection MapBack(const CoverSelection& cover, const BackMap& back_map) {
  Selection selection;
  for (const std::string& label : cover.chosen) {
    auto it = back_map.find(label);
    if (it == back_map.end()) {
      throw Error(ErrorCode::kInternal, "no origin recorded for set " + label);
    }
    if (it->second.kind == SetOrigin::Kind::kRule) {
      selection.chosen.insert(it->second.name);
    }
  }
  return selection;
}

double ClampedLog2(size_t n) {
  if (n <= 1) return 1.0;
  return std::max(1.0, std::log2(static_cast<double>(n)));
}

double FpApproxFactor(size_t num_rules, size_t truth_size) {
  return 2.0 * std::sqrt(static_cast<double>(num_rules) * ClampedLog2(truth_size));
}

double FpFnApproxFactor(size_t num_rules, size_t truth_size) {
  return 2.0 * std::sqrt(static_cast<double>(num_rules + truth_size) *
                         ClampedLog2(truth_size));
}

namespace {

// Tokens of one line of the set-system format: words, quoted strings and ':'.
std::vector<std::string> SplitLine(std::string_view line, int line_no,
                                   std::vector<bool>& quoted) {
  auto fail = [&](const std::string& message) {
    throw ParseError("", line_no, 1, message, std::string(line));
  };
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == ':') {
      tokens.emplace_back(":");
      quoted.push_back(false);
      ++i;
    } else if (c == '"') {
      std::string text;
      ++i;
      for (;;) {
        if (i >= line.size()) fail("unterminated string");
        char d = line[i++];
        if (d == '"') break;
        if (d == '\\') {
          if (i >= line.size()) fail("unterminated string");
          char e = line[i++];
          switch (e) {
            case '"': text += '"'; break;
            case '\\': text += '\\'; break;
            case 'n': text += '\n'; break;
            case 'r': text += '\r'; break;
            case 't': text += '\t'; break;
            default: fail("invalid escape sequence");
          }
        } else {
          text += d;
        }
      }
      tokens.push_back(std::move(text));
      quoted.push_back(true);
    } else {
      size_t begin = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
             line[i] != '\r' && line[i] != ':' && line[i] != '"' &&
             line[i] != '#') {
        ++i;
      }
      tokens.emplace_back(line.substr(begin, i - begin));
      quoted.push_back(false);
    }
  }
  return tokens;
}

std::string JoinQuoted(const ElementSet& ids) {
  std::string out;
  for (const std::string& id : ids) {
    out += ' ';
    out += QuoteText(id);
  }
  return out;
}

}  // namespace

std::string WriteSetSystem(const RbscInstance& instance) {
  std::string out = "red:" + JoinQuoted(instance.red) + "\n";
  out += "blue:" + JoinQuoted(instance.blue) + "\n";
  for (const LabeledSet& s : instance.sets) {
    out += "set " + QuoteText(s.label) + ":" + JoinQuoted(s.elements) + "\n";
  }
  return out;
}

RbscInstance ParseSetSystem(std::string_view text) {
  RbscInstance instance;
  int line_no = 0;
  size_t begin = 0;
  while (begin <= text.size()) {
    size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    ++line_no;
    begin = end + 1;

    std::vector<bool> quoted;
    std::vector<std::string> tokens = SplitLine(line, line_no, quoted);
    if (tokens.empty()) continue;
    auto fail = [&](const std::string& message) {
      throw ParseError("", line_no, 1, message, std::string(line));
    };
    size_t ids_from;
    ElementSet* target = nullptr;
    LabeledSet set;
    if (!quoted[0] && (tokens[0] == "red" || tokens[0] == "blue")) {
      if (tokens.size() < 2 || tokens[1] != ":" || quoted[1]) {
        fail("expected ':' after " + tokens[0]);
      }
      target = tokens[0] == "red" ? &instance.red : &instance.blue;
      ids_from = 2;
    } else if (!quoted[0] && tokens[0] == "set") {
      if (tokens.size() < 3 || tokens[2] != ":" || quoted[2] ||
          (tokens[1] == ":" && !quoted[1])) {
        fail("expected 'set <label>:'");
      }
      set.label = tokens[1];
      ids_from = 3;
    } else {
      fail("expected 'red:', 'blue:' or 'set <label>:'");
    }
    for (size_t k = ids_from; k < tokens.size(); ++k) {
      if (tokens[k] == ":" && !quoted[k]) fail("unexpected ':'");
      (target != nullptr ? *target : set.elements).insert(tokens[k]);
    }
    if (target == nullptr) {
      instance.back_map[set.label] = {SetOrigin::Kind::kRule, set.label};
      instance.sets.push_back(std::move(set));
    }
  }
  return instance;
}

}  // namespace rulesel
