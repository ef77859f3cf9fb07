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

#include <optional>
#include <random>

#include "oracles.h"
#include "seceq/errors.h"
#include "seceq/evaluate.h"
#include "seceq/oracle.h"
#include "seceq/verify.h"
#include "test_util.h"

namespace seceq {
namespace {

using testing::MakeArena;
using testing::RandomGame;

std::vector<ActionId> RandomChoice(const Arena& arena, std::mt19937& rng) {
  std::vector<ActionId> choice;
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    choice.push_back(rng() % arena.NumActions(s));
  }
  return choice;
}

TEST(VerifyTest, ThreePlayerGameBothActions) {
  const GameDocument doc = testing::LoadExample("three_player.json");
  for (ActionId a : {0, 1}) {
    const StrategyProfile profile = PositionalProfile(doc.arena, {a, 0, 0});
    const EquilibriumReport report = Verify(doc.arena, doc.specs, profile);
    EXPECT_EQ(report.payoffs, a == 0 ? (std::vector<Scalar>{1, 2, 0})
                                     : (std::vector<Scalar>{1, 0, 2}));
    EXPECT_TRUE(report.nash.holds);
    EXPECT_TRUE(report.secure.holds);
    EXPECT_TRUE(report.sum_secure.holds);
    EXPECT_FALSE(report.strongly_secure.holds);
    const LexiBestResponseResult lexi =
        LexiBestResponse(doc.arena, doc.specs, profile, 0);
    EXPECT_EQ(lexi.value, Scalar(1));
    EXPECT_EQ(lexi.min_opponent_sum, Scalar(2));
  }
}

TEST(VerifyTest, PlantedImprovementIsFound) {
  // Player 1 is told to take the worse of two sinks.
  const Arena arena = MakeArena(2, {{0, {{1}, {2}}}, {1, {{1}}}, {1, {{2}}}});
  const std::vector<PayoffSpec> specs = {
      Discounted{{{0, 0}, {Scalar(1)}, {Scalar(2)}}, Scalar(1, 2)},
      Discounted{{{0, 0}, {Scalar(1)}, {Scalar(1)}}, Scalar(1, 2)}};
  const StrategyProfile profile = PositionalProfile(arena, {0, 0, 0});
  const CheckResult nash = CheckNash(arena, specs, profile);
  EXPECT_FALSE(nash.holds);
  ASSERT_TRUE(nash.witness.has_value());
  EXPECT_EQ(nash.witness->deviator, 0);
  EXPECT_EQ(nash.witness->payoffs[0], Scalar(2));
  EXPECT_EQ(ExpectedPayoffs(arena, specs,
                            WithDeviation(arena, profile, nash.witness->strategy)),
            nash.witness->payoffs);
  const OracleResult oracle = OracleEnumerate(arena, specs);
  EXPECT_EQ(oracle.num_nash, 1);
}

TEST(VerifyTest, HarmfulEqualDeviationBreaksSecurity) {
  // Player 1 is indifferent; the second sink costs player 2 and helps
  // nobody.
  const Arena arena = MakeArena(2, {{0, {{1}, {2}}}, {1, {{1}}}, {1, {{2}}}});
  const std::vector<PayoffSpec> specs = {
      Discounted{{{0, 0}, {Scalar(1)}, {Scalar(1)}}, Scalar(1, 2)},
      Discounted{{{0, 0}, {Scalar(1)}, {Scalar(0)}}, Scalar(1, 2)}};
  const StrategyProfile profile = PositionalProfile(arena, {0, 0, 0});
  EXPECT_TRUE(CheckNash(arena, specs, profile).holds);
  const CheckResult secure = CheckSecure(arena, specs, profile);
  EXPECT_FALSE(secure.holds);
  ASSERT_TRUE(secure.witness.has_value());
  EXPECT_EQ(secure.witness->payoffs, (std::vector<Scalar>{1, 0}));
  // The oracle agrees: only the other profile is secure.
  const OracleResult oracle = OracleEnumerate(arena, specs);
  ASSERT_EQ(oracle.secure.size(), 1u);
  EXPECT_EQ(oracle.secure[0].decisions[0], 1);
}

TEST(VerifyTest, FormulationsOnHandVectors) {
  const std::vector<Scalar> ref = {1, 2, 0};
  EXPECT_TRUE(HurtsWithoutHelping(0, ref, std::vector<Scalar>{1, 1, 0}));
  EXPECT_FALSE(HurtsWithoutHelping(0, ref, std::vector<Scalar>{1, 0, 2}));
  const std::vector<std::vector<Scalar>> swap = {{1, 0, 2}};
  EXPECT_TRUE(SecureFormulationA(0, ref, swap));
  EXPECT_TRUE(SecureFormulationB(0, ref, swap));
  const std::vector<std::vector<Scalar>> bad = {{1, 2, -1}};
  EXPECT_FALSE(SecureFormulationA(0, ref, bad));
  EXPECT_FALSE(SecureFormulationB(0, ref, bad));
}

TEST(VerifyTest, TwoPlayersSecureIffStronglySecure) {
  std::mt19937 rng(17);
  int secure = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const GameDocument doc =
        RandomGame(seed, Family::kDiscounted, 2, 4, 2, seed % 2 == 0);
    const StrategyProfile profile =
        PositionalProfile(doc.arena, RandomChoice(doc.arena, rng));
    const EquilibriumReport report = Verify(doc.arena, doc.specs, profile);
    EXPECT_EQ(report.secure.holds, report.strongly_secure.holds) << "seed " << seed;
    EXPECT_EQ(HierarchyViolation(report, 2), "");
    secure += report.secure.holds;
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GameDocument doc = RandomGame(seed, Family::kReachedSet, 2, 4, 2);
    const OracleResult oracle = OracleEnumerate(doc.arena, doc.specs);
    EXPECT_EQ(oracle.hierarchy_violations, 0);
    for (const OracleProfile& p : oracle.secure) EXPECT_TRUE(p.strongly_secure);
  }
  EXPECT_GT(secure, 0);
}

TEST(VerifyTest, HierarchyOnRandomProfiles) {
  std::mt19937 rng(23);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const GameDocument doc =
        RandomGame(seed, Family::kDiscounted, 3, 4, 2, seed % 2 == 0);
    const StrategyProfile profile =
        PositionalProfile(doc.arena, RandomChoice(doc.arena, rng));
    const EquilibriumReport report = Verify(doc.arena, doc.specs, profile);
    EXPECT_EQ(HierarchyViolation(report, 3), "") << "seed " << seed;
    EXPECT_TRUE(report.secure_formulations_agree);
    EXPECT_TRUE(report.witnesses_replayed);
  }
}

TEST(VerifyTest, NashAgreesWithPositionalOracle) {
  // In discounted games a profitable deviation exists iff a positional one
  // does, so Nash verdicts must match the enumeration.
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const GameDocument doc =
        RandomGame(seed, Family::kDiscounted, 2, 4, 2, seed % 2 == 0);
    const OracleResult oracle = OracleEnumerate(doc.arena, doc.specs);
    std::vector<int> radix;
    for (StateId s = 0; s < doc.arena.NumStates(); ++s) radix.push_back(doc.arena.NumActions(s));
    long nash = 0;
    for (long index = 0; index < oracle.num_profiles; ++index) {
      std::vector<ActionId> choice(doc.arena.NumStates());
      long code = index;
      for (StateId s = 0; s < doc.arena.NumStates(); ++s) {
        choice[s] = code % radix[s];
        code /= radix[s];
      }
      nash += CheckNash(doc.arena, doc.specs, PositionalProfile(doc.arena, choice)).holds;
    }
    EXPECT_EQ(nash, oracle.num_nash) << "seed " << seed;
  }
}

// Copy of the arena where everybody but `player` is frozen on `choice`.
Arena FreezeOthers(const Arena& arena, const std::vector<ActionId>& choice,
                   PlayerId player) {
  std::vector<StateSpec> states = arena.States();
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    if (states[s].controller != player) {
      states[s].actions = {states[s].actions[choice[s]]};
    }
  }
  return Arena(arena.PlayerNames(), states, arena.Initial());
}

TEST(VerifyTest, BestResponseMatchesEnumeration) {
  std::mt19937 rng(31);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GameDocument doc =
        RandomGame(seed, Family::kDiscounted, 3, 5, 3, seed % 2 == 0);
    const std::vector<ActionId> choice = RandomChoice(doc.arena, rng);
    const StrategyProfile profile = PositionalProfile(doc.arena, choice);
    const std::vector<Scalar> u = ExpectedPayoffs(doc.arena, doc.specs, profile);
    for (PlayerId i = 0; i < 3; ++i) {
      const Arena frozen = FreezeOthers(doc.arena, choice, i);
      const Discounted& d = testing::AsDiscounted(doc.specs[i]);
      testing::Matrix rewards = d.rewards;
      for (StateId s = 0; s < doc.arena.NumStates(); ++s) {
        if (doc.arena.Controller(s) != i) rewards[s] = {d.rewards[s][choice[s]]};
      }
      const Scalar want = testing::BruteDiscountedValue(
          frozen, rewards, d.discount, i)[doc.arena.Initial()];
      const BestResponseResult best = BestResponse(doc.arena, doc.specs, profile, i);
      EXPECT_EQ(best.value, want) << "seed " << seed;
      EXPECT_GE(best.value, u[i]);
    }
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GameDocument doc = RandomGame(seed, Family::kReachedSet, 2, 5, 2);
    const std::vector<ActionId> choice = RandomChoice(doc.arena, rng);
    const StrategyProfile profile = PositionalProfile(doc.arena, choice);
    for (PlayerId i = 0; i < 2; ++i) {
      Scalar want;
      ASSERT_TRUE(testing::BruteReachedSetValue(FreezeOthers(doc.arena, choice, i),
                                                std::get<ReachedSet>(doc.specs[i]),
                                                i, 1 << 20, &want));
      EXPECT_EQ(BestResponse(doc.arena, doc.specs, profile, i).value, want)
          << "seed " << seed;
    }
  }
}

TEST(VerifyTest, LexiBestResponseMatchesEnumeration) {
  std::mt19937 rng(37);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GameDocument doc =
        RandomGame(seed, Family::kDiscounted, 3, 5, 2, seed % 2 == 0);
    const std::vector<ActionId> choice = RandomChoice(doc.arena, rng);
    const StrategyProfile profile = PositionalProfile(doc.arena, choice);
    for (PlayerId i = 0; i < 3; ++i) {
      // Every positional strategy of player i against the frozen others.
      std::vector<StateId> mine;
      for (StateId s = 0; s < doc.arena.NumStates(); ++s) {
        if (doc.arena.Controller(s) == i) mine.push_back(s);
      }
      std::optional<std::pair<Scalar, Scalar>> best;  // (value, -opponent sum)
      std::vector<ActionId> c = choice;
      for (StateId s : mine) c[s] = 0;
      while (true) {
        Scalar value, others = 0;
        for (PlayerId p = 0; p < 3; ++p) {
          const Discounted& d = testing::AsDiscounted(doc.specs[p]);
          const Scalar v = testing::PositionalDiscounted(doc.arena, d.rewards,
                                                         d.discount, c)[doc.arena.Initial()];
          if (p == i) value = v; else others += v;
        }
        const std::pair<Scalar, Scalar> key = {value, -others};
        if (!best || key > *best) best = key;
        size_t k = 0;
        while (k < mine.size() && ++c[mine[k]] == doc.arena.NumActions(mine[k])) {
          c[mine[k++]] = 0;
        }
        if (k == mine.size()) break;
      }
      const LexiBestResponseResult lexi =
          LexiBestResponse(doc.arena, doc.specs, profile, i);
      EXPECT_EQ(lexi.value, best->first) << "seed " << seed;
      EXPECT_EQ(lexi.min_opponent_sum, -best->second) << "seed " << seed;
      const std::vector<Scalar> replay = ExpectedPayoffs(
          doc.arena, doc.specs,
          WithDeviation(doc.arena, profile, lexi.witness.strategy));
      EXPECT_EQ(replay[i], lexi.value);
      EXPECT_EQ(Sum(replay) - replay[i], lexi.min_opponent_sum);
    }
  }
}

TEST(VerifyTest, SinglePlayerWithoutChoiceCannotImprove) {
  const GameDocument doc = testing::LoadExample("three_player.json");
  const StrategyProfile profile = PositionalProfile(doc.arena, {0, 0, 0});
  // Player 2 only has the forced "stay" moves.
  EXPECT_EQ(BestResponse(doc.arena, doc.specs, profile, 1).value, Scalar(2));
}

TEST(VerifyTest, RejectsBadProfile) {
  const GameDocument doc = testing::LoadExample("three_player.json");
  StrategyProfile profile = PositionalProfile(doc.arena, {5, 0, 0});
  EXPECT_THROW(Verify(doc.arena, doc.specs, profile), InputError);
}

}  // namespace
}  // namespace seceq
