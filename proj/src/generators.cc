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

#include "rulesel/generators.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <random>

#include "rulesel/covering.h"
#include "rulesel/eval.h"

namespace rulesel {
namespace {

// std::mt19937_64 is fully specified by the standard; the distributions
// are not, so draws are derived by hand to stay reproducible everywhere.
class Random {
 public:
  explicit Random(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n).
  uint64_t Below(uint64_t n) {
    uint64_t limit = std::numeric_limits<uint64_t>::max() -
                     std::numeric_limits<uint64_t>::max() % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool Chance(double p) {
    double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return u < p;
  }

 private:
  std::mt19937_64 engine_;
};

Atom Unary(const std::string& relation, const std::string& var) {
  return Atom::Relational(relation, {Term::Var(var)});
}

Atom Binary(const std::string& relation, Term a, Term b) {
  return Atom::Relational(relation, {std::move(a), std::move(b)});
}

Fact TextFact(const std::string& relation, const std::string& value) {
  return Fact{relation, {Value::Text(value)}};
}

std::string Marker(size_t i) { return "a" + std::to_string(i + 1); }
std::string Clone(size_t j, size_t k) {
  return "b" + std::to_string(j + 1) + "^" + std::to_string(k + 1);
}

void RejectCollisions(const SetCoverInstance& sc, bool with_clones) {
  std::set<std::string> generated;
  for (size_t i = 0; i < sc.sets.size(); ++i) generated.insert(Marker(i));
  if (with_clones) {
    for (size_t j = 0; j < sc.universe.size(); ++j) {
      for (size_t k = 0; k < sc.sets.size(); ++k) generated.insert(Clone(j, k));
    }
  }
  for (const std::string& u : sc.universe) {
    if (generated.count(u)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "universe element " + u + " collides with a generated name");
    }
  }
}

GeneratedInstance EncodeWithSetRelations(const SetCoverInstance& sc,
                                         bool with_clones) {
  CheckSetCover(sc);
  RejectCollisions(sc, with_clones);
  const size_t p = sc.sets.size();
  std::map<std::string, size_t> element_index;
  for (size_t j = 0; j < sc.universe.size(); ++j) element_index[sc.universe[j]] = j;

  std::vector<Rule> rules;
  GeneratedInstance out;
  for (size_t i = 0; i < p; ++i) {
    std::string relation = "Set" + std::to_string(i + 1);
    rules.push_back(Rule{"r" + std::to_string(i + 1), {Unary(relation, "x")},
                         Unary("B", "x")});
    out.example.premise.DeclareRelation(relation, 1);
    out.example.premise.Insert(TextFact(relation, Marker(i)));
    for (const std::string& u : sc.sets[i]) {
      out.example.premise.Insert(TextFact(relation, u));
      if (!with_clones) continue;
      for (size_t k = 0; k < p; ++k) {
        out.example.premise.Insert(TextFact(relation, Clone(element_index[u], k)));
      }
    }
  }
  out.example.truth.DeclareRelation("B", 1);
  for (size_t j = 0; j < sc.universe.size(); ++j) {
    out.example.truth.Insert(TextFact("B", sc.universe[j]));
    if (!with_clones) continue;
    for (size_t k = 0; k < p; ++k) out.example.truth.Insert(TextFact("B", Clone(j, k)));
  }
  out.rules = RuleSet::FromRules(std::move(rules));
  return out;
}

void CheckKnobs(const GenSeed& seed) {
  auto fail = [](const std::string& message) {
    throw Error(ErrorCode::kInvalidArgument, message);
  };
  if (seed.universe_size < 1) fail("universe size must be at least 1");
  if (seed.num_sets < 1) fail("number of sets must be at least 1");
  if (!(seed.density > 0.0 && seed.density <= 1.0)) {
    fail("density must be in (0, 1]");
  }
}

}  // namespace

void CheckSetCover(const SetCoverInstance& sc) {
  std::set<std::string> universe(sc.universe.begin(), sc.universe.end());
  if (universe.size() != sc.universe.size()) {
    throw Error(ErrorCode::kInvalidArgument, "universe has duplicate elements");
  }
  std::set<std::string> covered;
  for (size_t i = 0; i < sc.sets.size(); ++i) {
    if (sc.sets[i].empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "set " + std::to_string(i + 1) + " is empty");
    }
    for (const std::string& e : sc.sets[i]) {
      if (!universe.count(e)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "element " + e + " is not in the universe");
      }
      covered.insert(e);
    }
  }
  if (covered != universe) {
    throw Error(ErrorCode::kInvalidArgument, "sets do not cover the universe");
  }
}

int64_t MinCoverSize(const SetCoverInstance& sc) {
  CheckSetCover(sc);
  if (sc.universe.size() > 64 || sc.sets.size() > 24) {
    throw Error(ErrorCode::kInvalidArgument,
                "set cover too large for exhaustive search");
  }
  std::map<std::string, int> index;
  for (size_t j = 0; j < sc.universe.size(); ++j) index[sc.universe[j]] = static_cast<int>(j);
  std::vector<uint64_t> masks;
  for (const auto& s : sc.sets) {
    uint64_t m = 0;
    for (const std::string& e : s) m |= uint64_t{1} << index[e];
    masks.push_back(m);
  }
  uint64_t all = sc.universe.size() == 64 ? ~uint64_t{0}
                                          : (uint64_t{1} << sc.universe.size()) - 1;
  int best = static_cast<int>(sc.sets.size());
  for (uint64_t subset = 0; subset < (uint64_t{1} << sc.sets.size()); ++subset) {
    int count = std::popcount(subset);
    if (count >= best) continue;
    uint64_t covered = 0;
    for (size_t i = 0; i < masks.size(); ++i) {
      if (subset >> i & 1) covered |= masks[i];
    }
    if (covered == all) best = count;
  }
  return best;
}

GeneratedInstance GenerateSetCoverEncoding(const SetCoverInstance& sc) {
  return EncodeWithSetRelations(sc, /*with_clones=*/false);
}

GeneratedInstance GenerateClonedSetCoverEncoding(const SetCoverInstance& sc) {
  return EncodeWithSetRelations(sc, /*with_clones=*/true);
}

int BitWidth(size_t num_sets) {
  int width = 0;
  while ((uint64_t{1} << width) <= num_sets) ++width;
  return width;
}

GeneratedInstance GenerateFixedSchemaEncoding(const SetCoverInstance& sc) {
  CheckSetCover(sc);
  RejectCollisions(sc, /*with_clones=*/false);
  const size_t p = sc.sets.size();
  const int width = BitWidth(p);
  auto bit_of = [width](size_t i, int j) {  // j-th bit, 1 = most significant
    return static_cast<int>((i >> (width - j)) & 1);
  };
  auto num = [](int64_t v) { return Term::Const(Value::Int(v)); };

  GeneratedInstance out;
  std::vector<Rule> rules;
  for (size_t i = 1; i <= p; ++i) {
    Rule rule{"sigma_" + std::to_string(i), {}, Unary("B", "x")};
    for (int j = 1; j <= width; ++j) {
      rule.premise.push_back(Binary("Bit_" + std::to_string(bit_of(i, j)), num(j),
                                    Term::Var("z")));
    }
    rule.premise.push_back(Atom::Relational("One", {num(1)}));
    for (int j = 1; j < width; ++j) {
      rule.premise.push_back(Binary("Succ", num(j), num(j + 1)));
    }
    rule.premise.push_back(Binary("S", Term::Var("x"), Term::Var("z")));
    rules.push_back(std::move(rule));
  }
  out.rules = RuleSet::FromRules(std::move(rules));
  out.rules.premise_schema = {
      {"Bit_0", 2}, {"Bit_1", 2}, {"One", 1}, {"S", 2}, {"Succ", 2}};

  Instance& premise = out.example.premise;
  for (const auto& [name, arity] : out.rules.premise_schema) {
    premise.DeclareRelation(name, arity);
  }
  for (size_t i = 1; i <= p; ++i) {
    Value index = Value::Int(static_cast<int64_t>(i));
    premise.Insert(Fact{"S", {Value::Text(Marker(i - 1)), index}});
    for (const std::string& x : sc.sets[i - 1]) {
      premise.Insert(Fact{"S", {Value::Text(x), index}});
    }
    for (int j = 1; j <= width; ++j) {
      premise.Insert(Fact{"Bit_" + std::to_string(bit_of(i, j)),
                          {Value::Int(j), index}});
    }
  }
  premise.Insert(Fact{"One", {Value::Int(1)}});
  for (int j = 1; j < width; ++j) {
    premise.Insert(Fact{"Succ", {Value::Int(j), Value::Int(j + 1)}});
  }
  out.example.truth.DeclareRelation("B", 1);
  for (const std::string& u : sc.universe) out.example.truth.Insert(TextFact("B", u));
  return out;
}

std::string GenSeed::Describe() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "seed=%llu universe=%zu sets=%zu density=%.4g rules=%zu "
                "domain=%zu unary=%zu binary=%zu join_rate=%.4g fp_noise=%.4g "
                "fn_noise=%.4g",
                static_cast<unsigned long long>(seed), universe_size, num_sets,
                density, num_rules, domain_size, num_unary, num_binary,
                join_rule_rate, fp_noise, fn_noise);
  return buf;
}

SetCoverInstance GenerateRandomSetCover(const GenSeed& seed) {
  CheckKnobs(seed);
  Random rng(seed.seed);
  SetCoverInstance sc;
  for (size_t j = 0; j < seed.universe_size; ++j) {
    sc.universe.push_back("u" + std::to_string(j + 1));
  }
  sc.sets.resize(seed.num_sets);
  for (auto& s : sc.sets) {
    for (const std::string& u : sc.universe) {
      if (rng.Chance(seed.density)) s.insert(u);
    }
  }
  for (const std::string& u : sc.universe) {
    bool covered = std::any_of(sc.sets.begin(), sc.sets.end(),
                               [&](const auto& s) { return s.count(u) > 0; });
    if (!covered) sc.sets[rng.Below(sc.sets.size())].insert(u);
  }
  for (auto& s : sc.sets) {
    if (s.empty()) s.insert(sc.universe[rng.Below(sc.universe.size())]);
  }
  return sc;
}

GeneratedInstance GenerateRandomRuleSelection(const GenSeed& seed) {
  auto fail = [](const std::string& message) {
    throw Error(ErrorCode::kInvalidArgument, message);
  };
  if (seed.num_rules < 1) fail("number of rules must be at least 1");
  if (seed.domain_size < 1) fail("domain size must be at least 1");
  if (seed.num_unary < 1) fail("at least one unary premise relation is needed");
  if (!(seed.density > 0.0 && seed.density <= 1.0)) {
    fail("density must be in (0, 1]");
  }
  for (double rate : {seed.join_rule_rate, seed.fp_noise, seed.fn_noise}) {
    if (!(rate >= 0.0 && rate <= 1.0)) fail("rates must be in [0, 1]");
  }

  Random rng(seed.seed);
  std::vector<std::string> domain;
  for (size_t d = 0; d < seed.domain_size; ++d) {
    domain.push_back("d" + std::to_string(d + 1));
  }

  GeneratedInstance out;
  Instance& premise = out.example.premise;
  for (size_t i = 1; i <= seed.num_unary; ++i) {
    std::string rel = "P" + std::to_string(i);
    premise.DeclareRelation(rel, 1);
    for (const std::string& d : domain) {
      if (rng.Chance(seed.density)) premise.Insert(TextFact(rel, d));
    }
  }
  for (size_t i = 1; i <= seed.num_binary; ++i) {
    std::string rel = "E" + std::to_string(i);
    premise.DeclareRelation(rel, 2);
    for (const std::string& d : domain) {
      for (int edge = 0; edge < 2; ++edge) {
        if (rng.Chance(seed.density)) {
          premise.Insert(Fact{rel, {Value::Text(d),
                                    Value::Text(domain[rng.Below(domain.size())])}});
        }
      }
    }
  }

  std::vector<Rule> rules;
  for (size_t r = 1; r <= seed.num_rules; ++r) {
    Rule rule{"r" + std::to_string(r), {}, Unary("T", "x")};
    std::string first = "P" + std::to_string(rng.Below(seed.num_unary) + 1);
    if (seed.num_binary > 0 && rng.Chance(seed.join_rule_rate)) {
      std::string edge = "E" + std::to_string(rng.Below(seed.num_binary) + 1);
      rule.premise = {Unary(first, "y"),
                      Binary(edge, Term::Var("y"), Term::Var("x"))};
    } else if (seed.num_unary > 1 && rng.Chance(0.5)) {
      std::string second = "P" + std::to_string(rng.Below(seed.num_unary) + 1);
      rule.premise = {Unary(first, "x"), Unary(second, "x")};
      if (second == first) rule.premise.pop_back();
    } else {
      rule.premise = {Unary(first, "x")};
    }
    rules.push_back(std::move(rule));
  }
  out.rules = RuleSet::FromRules(std::move(rules));

  FactSet produced =
      EvalRuleSet(out.rules, Selection::All(out.rules), premise, nullptr);
  Instance& truth = out.example.truth;
  truth.DeclareRelation("T", 1);
  for (const Fact& f : produced) {
    if (!rng.Chance(seed.fp_noise)) truth.Insert(f);
  }
  for (const std::string& d : domain) {
    Fact f = TextFact("T", d);
    if (!produced.count(f) && rng.Chance(seed.fn_noise)) truth.Insert(f);
  }
  return out;
}

std::string WriteSetCover(const SetCoverInstance& sc) {
  std::string out = "universe:";
  for (const std::string& u : sc.universe) out += " " + QuoteText(u);
  out += "\n";
  for (size_t i = 0; i < sc.sets.size(); ++i) {
    out += "set " + QuoteText("S" + std::to_string(i + 1)) + ":";
    for (const std::string& e : sc.sets[i]) out += " " + QuoteText(e);
    out += "\n";
  }
  return out;
}

SetCoverInstance ParseSetCover(std::string_view text) {
  // Same lexical rules as the set-system format, with "universe" in place
  // of "blue".
  std::string rewritten;
  size_t begin = 0;
  while (begin <= text.size()) {
    size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos &&
        line.substr(first, 8) == "universe") {
      rewritten += std::string(line.substr(0, first)) + "blue" +
                   std::string(line.substr(first + 8));
    } else if (first != std::string_view::npos &&
               (line.substr(first, 4) == "blue" || line.substr(first, 3) == "red")) {
      throw ParseError("", static_cast<int>(std::count(text.begin(),
                                                       text.begin() + begin, '\n')) + 1,
                       static_cast<int>(first) + 1,
                       "expected 'universe:' or 'set <label>:'", std::string(line));
    } else {
      rewritten += line;
    }
    rewritten += '\n';
    begin = end + 1;
  }
  RbscInstance system = ParseSetSystem(rewritten);
  SetCoverInstance sc;
  std::set<std::string> universe = system.blue;
  for (const LabeledSet& s : system.sets) {
    sc.sets.push_back(s.elements);
    universe.insert(s.elements.begin(), s.elements.end());
  }
  sc.universe.assign(universe.begin(), universe.end());
  CheckSetCover(sc);
  return sc;
}

}  // namespace rulesel
