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

#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracles.h"
#include "rulesel/eval.h"
#include "rulesel/exact.h"
#include "rulesel/parser.h"

namespace rulesel {
namespace {

using testing::F1Cover;

ExactConfig Config(Objective objective) {
  ExactConfig config;
  config.objective = objective;
  return config;
}

TEST(SetCoverEncodingTest, ReproducesF1) {
  GeneratedInstance g = GenerateSetCoverEncoding(F1Cover());
  EXPECT_EQ(g.rules, testing::F1Rules());
  EXPECT_EQ(g.example, testing::F1Example());
}

TEST(SetCoverEncodingTest, SingleSetCostsOneMarker) {
  SetCoverInstance sc{{"u1", "u2"}, {{"u1", "u2"}}, {}};
  GeneratedInstance g = GenerateSetCoverEncoding(sc);
  EXPECT_EQ(SolveExact(g.rules, g.example, Config(Objective::kFp)).error, 1);
}

TEST(SetCoverEncodingTest, RejectsMalformedCovers) {
  EXPECT_THROW(GenerateSetCoverEncoding(SetCoverInstance{{}, {{}}, {}}), Error);
  EXPECT_THROW(GenerateSetCoverEncoding(SetCoverInstance{{"u1", "u2"}, {{"u1"}}, {}}),
               Error);
  EXPECT_THROW(GenerateSetCoverEncoding(SetCoverInstance{{"u1"}, {{"u9"}}, {}}), Error);
  EXPECT_THROW(GenerateSetCoverEncoding(SetCoverInstance{{"a1"}, {{"a1"}}, {}}), Error);
}

TEST(ClonedEncodingTest, SingleElement) {
  SetCoverInstance sc{{"u1"}, {{"u1"}}, {}};
  GeneratedInstance g = GenerateClonedSetCoverEncoding(sc);
  EXPECT_EQ(WriteFacts(g.example.premise), "Set1(\"a1\")\nSet1(\"b1^1\")\nSet1(\"u1\")\n");
  EXPECT_EQ(WriteFacts(g.example.truth), "B(\"b1^1\")\nB(\"u1\")\n");
}

TEST(ClonedEncodingTest, F1TruthSize) {
  GeneratedInstance g = GenerateClonedSetCoverEncoding(F1Cover());
  EXPECT_EQ(g.example.truth.size(), 12u);
}

TEST(FixedSchemaEncodingTest, BitWidth) {
  EXPECT_EQ(BitWidth(1), 1);
  EXPECT_EQ(BitWidth(2), 2);
  EXPECT_EQ(BitWidth(3), 2);
  EXPECT_EQ(BitWidth(4), 3);
  EXPECT_EQ(BitWidth(7), 3);
  EXPECT_EQ(BitWidth(8), 4);
}

TEST(FixedSchemaEncodingTest, RuleShapeForTwoSets) {
  SetCoverInstance sc{{"u1", "u2"}, {{"u1"}, {"u2"}}, {}};
  GeneratedInstance g = GenerateFixedSchemaEncoding(sc);
  EXPECT_EQ(WriteRules(g.rules),
            "rule sigma_1: Bit_0(1, z), Bit_1(2, z), One(1), Succ(1, 2), S(x, z) -> B(x).\n"
            "rule sigma_2: Bit_1(1, z), Bit_0(2, z), One(1), Succ(1, 2), S(x, z) -> B(x).\n");
  EXPECT_EQ(RuleSize(g.rules.rules[0]), 5);
  EXPECT_EQ(g.rules.premise_schema,
            (Schema{{"Bit_0", 2}, {"Bit_1", 2}, {"One", 1}, {"S", 2}, {"Succ", 2}}));
}

TEST(FixedSchemaEncodingTest, OneSet) {
  SetCoverInstance sc{{"u1"}, {{"u1"}}, {}};
  GeneratedInstance g = GenerateFixedSchemaEncoding(sc);
  EXPECT_EQ(WriteRules(g.rules), "rule sigma_1: Bit_1(1, z), One(1), S(x, z) -> B(x).\n");
  EXPECT_EQ(WriteFacts(g.example.premise),
            "Bit_1(1, 1)\nOne(1)\nS(\"a1\", 1)\nS(\"u1\", 1)\n");
}

TEST(FixedSchemaEncodingTest, F1AgreesWithSetRelations) {
  GeneratedInstance fixed = GenerateFixedSchemaEncoding(F1Cover());
  GeneratedInstance plain = GenerateSetCoverEncoding(F1Cover());
  int64_t a = SolveExact(fixed.rules, fixed.example, Config(Objective::kFp)).error;
  EXPECT_EQ(a, 2);
  EXPECT_EQ(a, SolveExact(plain.rules, plain.example, Config(Objective::kFp)).error);
  // Each sigma_i reproduces exactly Set_i's output.
  EvalCache c1 = EvalCache::Build(fixed.rules, fixed.example.premise);
  EvalCache c2 = EvalCache::Build(plain.rules, plain.example.premise);
  for (size_t i = 0; i < 3; ++i) EXPECT_EQ(c1.RuleOutput(i), c2.RuleOutput(i));
}

TEST(MinCoverTest, MatchesOracle) {
  EXPECT_EQ(MinCoverSize(F1Cover()), 2);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    GenSeed g;
    g.seed = seed;
    g.universe_size = 7;
    g.num_sets = 6;
    SetCoverInstance sc = GenerateRandomSetCover(g);
    EXPECT_EQ(MinCoverSize(sc), oracle::BruteMinCover(sc));
  }
}

TEST(RandomSetCoverTest, DeterministicAndValid) {
  GenSeed g;
  g.seed = 42;
  g.universe_size = 6;
  g.num_sets = 5;
  SetCoverInstance a = GenerateRandomSetCover(g);
  SetCoverInstance b = GenerateRandomSetCover(g);
  EXPECT_EQ(WriteSetCover(a), WriteSetCover(b));
  EXPECT_NO_THROW(CheckSetCover(a));
  g.seed = 43;
  EXPECT_NE(WriteSetCover(a), WriteSetCover(GenerateRandomSetCover(g)));
}

TEST(RandomSetCoverTest, FullDensityGivesUniverseEverywhere) {
  GenSeed g;
  g.density = 1.0;
  SetCoverInstance sc = GenerateRandomSetCover(g);
  std::set<std::string> universe(sc.universe.begin(), sc.universe.end());
  for (const auto& s : sc.sets) EXPECT_EQ(s, universe);
}

TEST(RandomSetCoverTest, RejectsBadKnobs) {
  GenSeed g;
  g.universe_size = 0;
  EXPECT_THROW(GenerateRandomSetCover(g), Error);
  g = GenSeed();
  g.num_sets = 0;
  EXPECT_THROW(GenerateRandomSetCover(g), Error);
  g = GenSeed();
  g.density = 0.0;
  EXPECT_THROW(GenerateRandomSetCover(g), Error);
  g.density = 1.5;
  EXPECT_THROW(GenerateRandomSetCover(g), Error);
}

TEST(SetCoverFormatTest, RoundTrip) {
  SetCoverInstance sc = F1Cover();
  std::string text = WriteSetCover(sc);
  EXPECT_EQ(text,
            "universe: \"u1\" \"u2\" \"u3\"\n"
            "set \"S1\": \"u1\" \"u2\"\n"
            "set \"S2\": \"u2\" \"u3\"\n"
            "set \"S3\": \"u3\"\n");
  SetCoverInstance again = ParseSetCover(text);
  EXPECT_EQ(again.universe, sc.universe);
  EXPECT_EQ(again.sets, sc.sets);
  EXPECT_THROW(ParseSetCover("red: x\n"), ParseError);
}

TEST(RandomRuleSelectionTest, NoNoiseMeansZeroError) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    GenSeed g;
    g.seed = seed;
    g.num_rules = 6;
    g.fp_noise = 0.0;
    g.fn_noise = 0.0;
    GeneratedInstance inst = GenerateRandomRuleSelection(g);
    EXPECT_EQ(ComputeErrors(inst.rules, Selection::All(inst.rules), inst.example).total, 0);
    EXPECT_EQ(SolveExact(inst.rules, inst.example, ExactConfig()).error, 0);
  }
}

TEST(RandomRuleSelectionTest, DeterministicText) {
  GenSeed g;
  g.seed = 9;
  GeneratedInstance a = GenerateRandomRuleSelection(g);
  GeneratedInstance b = GenerateRandomRuleSelection(g);
  EXPECT_EQ(WriteRules(a.rules), WriteRules(b.rules));
  EXPECT_EQ(WriteFacts(a.example.premise), WriteFacts(b.example.premise));
  EXPECT_EQ(WriteFacts(a.example.truth), WriteFacts(b.example.truth));
  EXPECT_EQ(Fingerprint(a.rules, a.example), Fingerprint(b.rules, b.example));
}

TEST(RandomRuleSelectionTest, OutputParsesBack) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    GenSeed g;
    g.seed = seed;
    GeneratedInstance inst = GenerateRandomRuleSelection(g);
    RuleSet rules = ParseRules(WriteRules(inst.rules));
    EXPECT_EQ(rules.rules, inst.rules.rules);
    EXPECT_EQ(ParseFacts(WriteFacts(inst.example.truth), rules.conclusion_schema),
              inst.example.truth);
  }
}

}  // namespace
}  // namespace rulesel
