// Copyright 2026 The seceq Authors.
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

#include <gtest/gtest.h>

#include "seceq/arena.h"
#include "seceq/errors.h"
#include "seceq/game_io.h"
#include "seceq/scalar.h"
#include "test_util.h"

namespace seceq {
namespace {

using testing::MakeArena;
using testing::RandomGame;

TEST(ScalarTest, ParsesCanonicalForms) {
  EXPECT_EQ(ParseScalar("3"), Scalar(3));
  EXPECT_EQ(ParseScalar("-1/4"), Scalar(-1, 4));
  EXPECT_EQ(ParseScalar("2/4"), Scalar(1, 2));
  EXPECT_EQ(ToString(ParseScalar("-6/4")), "-3/2");
  EXPECT_EQ(ToString(Scalar(0)), "0");
}

TEST(ScalarTest, RejectsGarbage) {
  for (const char* bad : {"", "1/0", "x", "1.5", "1/", "/2", "1//2"}) {
    EXPECT_THROW(ParseScalar(bad), InputError) << bad;
  }
}

TEST(ArenaTest, ThirdsSumToOneExactly) {
  const GameDocument doc = ParseGame(R"({
    "players": ["p1"], "states": ["a", "b", "c"], "initial": "a",
    "controller": {"a": "p1", "b": "p1", "c": "p1"},
    "actions": {"a": ["x"], "b": ["x"], "c": ["x"]},
    "transitions": [
      {"state": "a", "action": "x", "to": [{"target": "a", "prob": "1/3"},
        {"target": "b", "prob": "1/3"}, {"target": "c", "prob": "1/3"}]},
      {"state": "b", "action": "x", "to": [{"target": "b", "prob": "1"}]},
      {"state": "c", "action": "x", "to": [{"target": "c", "prob": "1"}]}],
    "payoffs": {"p1": {"family": "discounted", "discount": "1/2", "rewards": {}}}
  })");
  EXPECT_TRUE(ValidateArena(doc.arena).empty());
  EXPECT_EQ(doc.arena.Next(0, 0).size(), 3u);
}

TEST(ArenaTest, ReportsBadDistribution) {
  const Arena arena(
      {"p1"},
      {StateSpec{"s", 0, {ActionSpec{"a", {{0, Scalar(1, 2)}}}}}}, 0);
  EXPECT_FALSE(ValidateArena(arena).empty());
  EXPECT_THROW(RequireValidArena(arena), InputError);
}

TEST(ArenaTest, ReportsStateWithoutActions) {
  const Arena arena({"p1"}, {StateSpec{"s", 0, {}}}, 0);
  EXPECT_FALSE(ValidateArena(arena).empty());
}

TEST(ArenaTest, EdgesAreNumberedDensely) {
  const Arena arena = MakeArena(2, {{0, {{1, 2}, {0}}}, {1, {{1}}}, {0, {{2}}}});
  EXPECT_EQ(arena.NumEdges(), 5);
  EXPECT_EQ(arena.EdgeIndex(0, 1, 0), 2);
  EXPECT_EQ(arena.EdgeIndex(2, 0, 0), 4);
  EXPECT_FALSE(arena.IsDeterministic());
}

TEST(GameIoTest, MinimalDocument) {
  const GameDocument doc = ParseGame(R"({
    "players": ["p1"], "states": ["s"], "initial": "s",
    "controller": {"s": "p1"}, "actions": {"s": ["stay"]},
    "transitions": [{"state": "s", "action": "stay",
                     "to": [{"target": "s", "prob": "1"}]}],
    "payoffs": {"p1": {"family": "reached_set", "targets": [["s"]],
                       "values": ["0", "1"]}}
  })");
  EXPECT_EQ(doc.arena.NumStates(), 1);
  EXPECT_FALSE(doc.profile.has_value());
}

TEST(GameIoTest, SyntaxErrorHasPosition) {
  try {
    ParseGame("{\n  \"players\": [\"p1\",\n}");
    FAIL() << "no error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
}

TEST(GameIoTest, SemanticErrorsAreInputErrors) {
  EXPECT_THROW(ParseGame(R"({"players": ["p1"], "states": ["s"],
    "initial": "t", "controller": {"s": "p1"}, "actions": {"s": ["a"]},
    "transitions": [], "payoffs": {}})"),
               InputError);
}

TEST(GameIoTest, RoundTripIsStable) {
  for (Family family : {Family::kDiscounted, Family::kFiniteHorizon,
                        Family::kReachedSet, Family::kCappedHitting}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const bool det = family != Family::kDiscounted || seed % 2 == 0;
      const GameDocument doc = RandomGame(seed, family, 3, 5, 3, det);
      const std::string once = SerializeGame(doc);
      const std::string twice = SerializeGame(ParseGame(once));
      EXPECT_EQ(once, twice) << FamilyName(family) << " seed " << seed;
    }
  }
}

}  // namespace
}  // namespace seceq
