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

// Text formats for rules and facts.
//
// Rules, one or more per file:
//
//   rule m: A(p1, q1, ln), A(p2, q2, ln), neq(p1, p2) -> Same(p1, q1, p2, q2).
//
// Relation names start with an uppercase letter; builtin names are lowercase
// and reserved. In term position a bare identifier is always a variable and
// `_` is a fresh anonymous variable; constants are quoted strings (escapes
// \" \\ \n \r \t) or decimal literals. `#` starts a comment.
//
// Facts, one per line, constants only:
//
//   SameAuthor(19132421, 1, 19135934, 1)   # trailing comment

#ifndef RULESEL_PARSER_H_
#define RULESEL_PARSER_H_

#include <string>
#include <string_view>

#include "rulesel/model.h"

namespace rulesel {

// Parses and validates a rule file. Schemas are inferred from usage.
// Throws ParseError on malformed text and ValidationError on unsafe rules,
// schema overlap, or conflicting arities.
RuleSet ParseRules(std::string_view text, const std::string& file = "");

// Parses a fact file. With a non-empty schema every fact must conform to it
// and the returned instance carries that schema; otherwise the schema is
// inferred. Throws ParseError, including for arity mismatches.
Instance ParseFacts(std::string_view text, const Schema& schema = {},
                    const std::string& file = "");

// Canonical forms with LF line endings: rules in list order, facts in
// (relation, args) order.
std::string WriteRules(const RuleSet& rules);
std::string WriteFacts(const Instance& instance);

// 16 hex digits identifying the canonical text of a rule set and example.
std::string Fingerprint(const RuleSet& rules, const DataExample& example);

}  // namespace rulesel

#endif  // RULESEL_PARSER_H_
