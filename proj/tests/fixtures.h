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


#ifndef RULESEL_TESTS_FIXTURES_H_
#define RULESEL_TESTS_FIXTURES_H_

#include <string>

#include "rulesel/generators.h"
#include "rulesel/model.h"
#include "rulesel/parser.h"

namespace rulesel::testing {

inline constexpr char kF1Rules[] =
    "rule r1: Set1(x) -> B(x).\n"
    "rule r2: Set2(x) -> B(x).\n"
    "rule r3: Set3(x) -> B(x).\n";

inline constexpr char kF1Premise[] =
    "Set1(\"u1\")\nSet1(\"u2\")\nSet1(\"a1\")\n"
    "Set2(\"u2\")\nSet2(\"u3\")\nSet2(\"a2\")\n"
    "Set3(\"u3\")\nSet3(\"a3\")\n";

inline constexpr char kF1Truth[] = "B(\"u1\")\nB(\"u2\")\nB(\"u3\")\n";

inline RuleSet F1Rules() { return ParseRules(kF1Rules); }

inline DataExample F1Example() {
  RuleSet rules = F1Rules();
  return DataExample{ParseFacts(kF1Premise), ParseFacts(kF1Truth, rules.conclusion_schema)};
}

// U = {u1, u2, u3}; sets {u1, u2}, {u2, u3}, {u3}.
inline SetCoverInstance F1Cover() {
  return SetCoverInstance{{"u1", "u2", "u3"}, {{"u1", "u2"}, {"u2", "u3"}, {"u3"}}, {}};
}

inline Fact B(const std::string& v) { return Fact{"B", {Value::Text(v)}}; }

inline Selection Select(std::initializer_list<std::string> names) {
  return Selection{std::set<std::string>(names)};
}

}  // namespace rulesel::testing

#endif  // RULESEL_TESTS_FIXTURES_H_
