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


#include "rulesel/parser.h"

#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracles.h"

namespace rulesel {
namespace {

using testing::F1Rules;
using testing::kF1Premise;
using testing::kF1Rules;

ParseError ParseFailure(const std::string& text, bool facts = false) {
  try {
    if (facts) {
      ParseFacts(text);
    } else {
      ParseRules(text);
    }
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError("", 0, 0, "", "");
}

TEST(ParseRulesTest, SingleRuleInfersSchemas) {
  RuleSet rules = ParseRules("rule r1: Set1(x) -> B(x).");
  ASSERT_EQ(rules.size(), 1u);
  EXPECT_EQ(rules.premise_schema, (Schema{{"Set1", 1}}));
  EXPECT_EQ(rules.conclusion_schema, (Schema{{"B", 1}}));
}

TEST(ParseRulesTest, BuiltinInPremise) {
  RuleSet rules = ParseRules(
      "rule m: A(p1,q1,ln), A(p2,q2,ln), neq(p1,p2) -> Same(p1,q1,p2,q2).");
  EXPECT_EQ(RuleSize(rules.rules[0]), 3);
  EXPECT_EQ(rules.conclusion_schema.at("Same"), 4u);
  EXPECT_TRUE(rules.rules[0].premise[2].is_builtin());
}

TEST(ParseRulesTest, JaccardThresholdIsLastArgument) {
  RuleSet rules = ParseRules(
      "rule j: A(x,u), A(y,v), jaccard_geq(u, v, 0.75) -> L(x,y).");
  const Atom& builtin = rules.rules[0].premise[2];
  EXPECT_EQ(builtin.terms.size(), 2u);
  EXPECT_EQ(builtin.threshold->ToString(), "0.75");
  EXPECT_EQ(rules.rules[0].ToString(),
            "rule j: A(x, u), A(y, v), jaccard_geq(u, v, 0.75) -> L(x, y).");
}

TEST(ParseRulesTest, UnclosedParenPointsAtIt) {
  ParseError e = ParseFailure("rule bad: S(x) -> B(x,");
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.column(), 20);
  EXPECT_EQ(e.code(), ErrorCode::kParse);
}

TEST(ParseRulesTest, ErrorsCarryPositions) {
  ParseError e = ParseFailure("rule a: S(x) -> B(x).\nrule b S(x) -> B(x).");
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 8);
  EXPECT_FALSE(e.snippet().empty());
  ParseFailure("rule a: S(x) -> foo(x).");
  ParseFailure("rule a: S(x) -> B(x)");
  ParseFailure("rule _a: S(x) -> B(x).");
  ParseFailure("rule a: S(\"unterminated) -> B(x).");
}

TEST(ParseRulesTest, UnsafeRuleIsValidationError) {
  EXPECT_THROW(ParseRules("rule r: S(x) -> B(y)."), ValidationError);
}

TEST(ParseRulesTest, AnonymousVariablesAreDistinct) {
  RuleSet rules = ParseRules("rule r: E(x, _), E(_, y) -> F(x, y).");
  const Rule& rule = rules.rules[0];
  EXPECT_NE(rule.premise[0].terms[1], rule.premise[1].terms[0]);
  EXPECT_EQ(rule.ToString(), "rule r: E(x, _), E(_, y) -> F(x, y).");
}

TEST(ParseRulesTest, CommentsAndCrlf) {
  RuleSet rules =
      ParseRules("# header\r\nrule r1: Set1(x) -> B(x). # trailing\r\n\r\n");
  EXPECT_EQ(rules.size(), 1u);
}

TEST(ParseFactsTest, SetSemantics) {
  Instance inst = ParseFacts("Set1(\"u1\")\nSet1(\"u2\")\nSet1(\"u1\")\n");
  EXPECT_EQ(inst.size(), 2u);
}

TEST(ParseFactsTest, NumericArguments) {
  Instance inst = ParseFacts("SameAuthor(19132421, 1, 19135934, 1)");
  ASSERT_EQ(inst.size(), 1u);
  const Fact& f = *inst.facts().begin();
  EXPECT_EQ(f.args.size(), 4u);
  EXPECT_TRUE(f.args[0].is_number());
  EXPECT_EQ(f.args[0].ToLiteral(), "19132421");
}

TEST(ParseFactsTest, EmptyTerm) {
  ParseError e = ParseFailure("B(\"u1\", )", /*facts=*/true);
  EXPECT_NE(e.detail().find("empty term"), std::string::npos);
}

TEST(ParseFactsTest, RejectsVariablesAndSchemaMismatch) {
  ParseFailure("B(x)", true);
  EXPECT_THROW(ParseFacts("B(\"a\", \"b\")", Schema{{"B", 1}}), ParseError);
  EXPECT_THROW(ParseFacts("C(\"a\")", Schema{{"B", 1}}), ParseError);
  EXPECT_THROW(ParseFacts("B(\"a\")\nB(\"a\", \"b\")"), ParseError);
}

TEST(ParseFactsTest, EscapesAndUnicode) {
  Instance inst = ParseFacts("N(\"caf\xC3\xA9 \\\"x\\\" \\\\ \\t\")");
  const Fact& f = *inst.facts().begin();
  EXPECT_EQ(f.args[0].text(), "caf\xC3\xA9 \"x\" \\ \t");
  EXPECT_THROW(ParseFacts("N(\"\xFF\")"), ParseError);
}

TEST(WriteTest, EmptyInstanceIsEmptyText) { EXPECT_EQ(WriteFacts(Instance()), ""); }

TEST(WriteTest, F1RoundTrip) {
  RuleSet rules = F1Rules();
  EXPECT_EQ(WriteRules(rules), kF1Rules);
  EXPECT_EQ(ParseRules(WriteRules(rules)), rules);
  Instance premise = ParseFacts(kF1Premise);
  EXPECT_EQ(ParseFacts(WriteFacts(premise)), premise);
}

TEST(WriteTest, RandomRoundTrips) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    oracle::RandomCase c = oracle::RandomEvalCase(seed, 4, 3, 12);
    std::string text = WriteRules(c.rules);
    RuleSet again = ParseRules(text);
    EXPECT_EQ(again.rules, c.rules.rules) << text;
    EXPECT_EQ(WriteRules(again), text);
    std::string facts = WriteFacts(c.example.premise);
    EXPECT_EQ(WriteFacts(ParseFacts(facts)), facts);
  }
}

TEST(FingerprintTest, StableAndSensitive) {
  DataExample ex = testing::F1Example();
  std::string a = Fingerprint(F1Rules(), ex);
  EXPECT_EQ(a.size(), 16u);
  EXPECT_EQ(a, Fingerprint(F1Rules(), ex));
  ex.truth.Insert(testing::B("zz"));
  EXPECT_NE(a, Fingerprint(F1Rules(), ex));
}

// Arbitrary bytes either parse or raise one of the documented errors.
TEST(ParserFuzzTest, RandomBytesNeverCrash) {
  oracle::Rng rng(7);
  const std::string alphabet = "rule :(),.->\"\\_#\nxyzAB019\t\r\xC3\xA9\xFF";
  for (int iter = 0; iter < 3000; ++iter) {
    std::string text;
    int len = rng.Between(0, 40);
    for (int i = 0; i < len; ++i) {
      text += rng.Chance(0.9) ? alphabet[rng.Below(alphabet.size())]
                              : static_cast<char>(rng.Below(256));
    }
    for (bool facts : {false, true}) {
      try {
        if (facts) {
          ParseFacts(text);
        } else {
          ParseRules(text);
        }
      } catch (const ParseError&) {
      } catch (const ValidationError&) {
      }
    }
  }
}

// Mutating one character of a valid file must also fail cleanly.
TEST(ParserFuzzTest, SingleCharacterMutations) {
  std::string base = kF1Rules;
  for (size_t i = 0; i < base.size(); ++i) {
    for (char c : {'(', ')', ',', '.', '"', ' ', 'x', '-'}) {
      std::string text = base;
      text[i] = c;
      try {
        ParseRules(text);
      } catch (const ParseError& e) {
        EXPECT_GE(e.line(), 1);
        EXPECT_GE(e.column(), 1);
      } catch (const ValidationError&) {
      }
    }
  }
}

}  // namespace
}  // namespace rulesel
