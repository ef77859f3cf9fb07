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

#include <cmath>
#include <random>

#include "oracles.h"
#include "seceq/errors.h"
#include "seceq/evaluate.h"
#include "seceq/markov.h"
#include "seceq/payoff.h"
#include "seceq/strategy.h"
#include "test_util.h"

namespace seceq {
namespace {

using testing::MakeArena;

TEST(PayoffTest, PrefixThenZeroCycle) {
  // s0 -> s1 -> s1 ..., reward 3 on the first move only.
  const Arena arena = MakeArena(1, {{0, {{1}}}, {0, {{1}}}});
  Discounted d{{{Scalar(3)}, {Scalar(0)}}, Scalar(1, 2)};
  const Lasso lasso{{{0, 0}}, {{1, 0}}};
  EXPECT_EQ(EvaluateOnLasso(arena, d, lasso), Scalar(3));
  EXPECT_EQ(testing::UnrolledDiscounted({3}, {0}, Scalar(1, 2), 64), Scalar(3));
}

TEST(PayoffTest, LassoMatchesUnrolledSum) {
  std::mt19937 rng(7);
  const Arena arena = MakeArena(1, {{0, {{1}}}, {0, {{2}}}, {0, {{3}}}, {0, {{1}}}});
  for (int round = 0; round < 20; ++round) {
    Discounted d{{}, testing::Q(1 + rng() % 3, 4)};
    for (int s = 0; s < 4; ++s) d.rewards.push_back({testing::Q(int(rng() % 9) - 4, 1 + rng() % 4)});
    const Lasso lasso{{{0, 0}}, {{1, 0}, {2, 0}, {3, 0}}};
    const int periods = 64;
    const Scalar unrolled = testing::UnrolledDiscounted(
        {d.rewards[0][0]}, {d.rewards[1][0], d.rewards[2][0], d.rewards[3][0]},
        d.discount, periods);
    // The tail after `periods` cycles is the lasso value of the cycle,
    // scaled by the discount accumulated so far.
    Scalar tail_weight = d.discount;
    for (int k = 0; k < 3 * periods; ++k) tail_weight *= d.discount;
    const Scalar value = EvaluateOnLasso(arena, d, lasso);
    const Scalar cycle =
        EvaluateOnLasso(arena.WithInitial(1), d, Lasso{{}, lasso.cycle});
    EXPECT_EQ(value, unrolled + tail_weight * cycle);
  }
}

TEST(PayoffTest, ReachedSetAndHitting) {
  const Arena arena = MakeArena(1, {{0, {{1}}}, {0, {{2}}}, {0, {{2}}}});
  const Lasso lasso{{{0, 0}, {1, 0}}, {{2, 0}}};
  ReachedSet r{{{1}, {0}, {2}}, {0, 1, 2, 3, 4, 5, 6, 7}};
  EXPECT_EQ(EvaluateOnLasso(arena, r, lasso), Scalar(7));
  EXPECT_EQ(FirstHittingTime(lasso, std::vector<StateId>{2}), 2);
  CappedHitting c{{2}, 1, {Scalar(5), Scalar(4)}, Scalar(0)};
  EXPECT_EQ(EvaluateOnLasso(arena, c, lasso), Scalar(0));
  c.cap = 2;
  c.values.push_back(Scalar(3));
  EXPECT_EQ(EvaluateOnLasso(arena, c, lasso), Scalar(3));
}

TEST(PayoffTest, Ranges) {
  EXPECT_EQ(PayoffRange(ReachedSet{{{0}}, {Scalar(1), Scalar(0)}}),
            (std::vector<Scalar>{0, 1}));
  EXPECT_FALSE(IsFiniteRange(Discounted{}));
}

// Coin flip from s0 into an absorbing 0-state or an absorbing 1-state.
Arena CoinArena() {
  return MakeArena(1, {{0, {{1, 2}}}, {0, {{1}}}, {0, {{2}}}});
}

TEST(EvaluateTest, CoinFlipIsOneHalfExactly) {
  const Arena arena = CoinArena();
  const std::vector<PayoffSpec> specs = {
      Discounted{{{Scalar(0)}, {Scalar(0)}, {Scalar(1)}}, Scalar(1, 2)}};
  const StrategyProfile profile = PositionalProfile(arena, {0, 0, 0});
  EXPECT_EQ(ExpectedPayoffs(arena, specs, profile)[0], Scalar(1, 2));

  // Hand solve: v2 = 1 + v2/2, v1 = v1/2, v0 = (v1 + v2)/4.
  const Scalar v2 = 2, v1 = 0;
  EXPECT_EQ((v1 + v2) / 4, Scalar(1, 2));
}

TEST(EvaluateTest, CoinFlipMonteCarlo) {
  // Simulates the chain itself; the discounted tail after 60 periods is
  // below 2^-59 and ignored.
  const Arena arena = CoinArena();
  const double reward[] = {0.0, 0.0, 1.0};
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const int samples = 1000000;
  double sum = 0, sum_sq = 0;
  for (int k = 0; k < samples; ++k) {
    StateId s = arena.Initial();
    double x = 0, weight = 1;
    for (int t = 0; t < 60; ++t) {
      x += weight * reward[s];
      weight *= 0.5;
      double u = uniform(rng);
      for (const Transition& tr : arena.Next(s, 0)) {
        u -= tr.prob.get_d();
        if (u < 0) {
          s = tr.target;
          break;
        }
      }
    }
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
  EXPECT_LT(std::abs(mean - 0.5), 3 * se);
}

TEST(EvaluateTest, MatchesDenseSolveOnRandomProfiles) {
  std::mt19937 rng(11);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const GameDocument doc =
        testing::RandomGame(seed, Family::kDiscounted, 2, 6, 3, seed % 2 == 0);
    std::vector<ActionId> choice;
    for (StateId s = 0; s < doc.arena.NumStates(); ++s) {
      choice.push_back(rng() % doc.arena.NumActions(s));
    }
    const std::vector<Scalar> got =
        ExpectedPayoffs(doc.arena, doc.specs, PositionalProfile(doc.arena, choice));
    for (PlayerId p = 0; p < 2; ++p) {
      const Discounted& d = testing::AsDiscounted(doc.specs[p]);
      const std::vector<Scalar> want =
          testing::PositionalDiscounted(doc.arena, d.rewards, d.discount, choice);
      EXPECT_EQ(got[p], want[doc.arena.Initial()]) << "seed " << seed;
    }
  }
}

TEST(EvaluateTest, InducedLassoOfDeterministicProfile) {
  const Arena arena = MakeArena(1, {{0, {{1}}}, {0, {{2}}}, {0, {{1}}}});
  const Lasso lasso = InducedLasso(arena, PositionalProfile(arena, {0, 0, 0}));
  EXPECT_EQ(lasso.prefix.size(), 1u);
  EXPECT_EQ(lasso.cycle.size(), 2u);
  EXPECT_THROW(InducedLasso(CoinArena(), PositionalProfile(CoinArena(), {0, 0, 0})),
               InputError);
}

TEST(MarkovTest, SolveLinearAgreesWithDenseSolve) {
  std::mt19937 rng(3);
  for (int round = 0; round < 20; ++round) {
    const int n = 1 + rng() % 5;
    testing::Matrix a(n, std::vector<Scalar>(n));
    std::vector<Scalar> b(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[i][j] = testing::Q(int(rng() % 7) - 3, 1 + rng() % 3);
      a[i][i] += 20;  // diagonally dominant, so nonsingular
      b[i] = Scalar(int(rng() % 11) - 5);
    }
    EXPECT_EQ(SolveLinear(a, b), testing::DenseSolve(a, b));
  }
}

TEST(MarkovTest, SccOrderIsReverseTopological) {
  const std::vector<std::vector<int>> graph = {{1}, {2}, {1, 3}, {}};
  const auto sccs = StronglyConnectedComponents(graph);
  ASSERT_EQ(sccs.size(), 3u);
  EXPECT_EQ(sccs[0], std::vector<int>{3});
  EXPECT_EQ(sccs[2], std::vector<int>{0});
}

TEST(MarkovTest, MdpMatchesPolicyEnumeration) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GameDocument doc =
        testing::RandomGame(seed, Family::kDiscounted, 1, 5, 3, seed % 3 != 0);
    const Discounted& d = testing::AsDiscounted(doc.specs[0]);
    Mdp mdp;
    mdp.discount = d.discount;
    mdp.fixed.assign(doc.arena.NumStates(), 0);
    for (StateId s = 0; s < doc.arena.NumStates(); ++s) {
      mdp.actions.emplace_back();
      for (ActionId a = 0; a < doc.arena.NumActions(s); ++a) {
        MdpAction action{{}, d.rewards[s][a]};
        for (const Transition& t : doc.arena.Next(s, a)) {
          action.next.emplace_back(t.target, t.prob);
        }
        mdp.actions.back().push_back(action);
      }
    }
    const std::vector<Scalar> want =
        testing::BruteDiscountedValue(doc.arena, d.rewards, d.discount, 0);
    EXPECT_EQ(SolveMdp(mdp, Sense::kMax).value, want) << "seed " << seed;
  }
}

}  // namespace
}  // namespace seceq
