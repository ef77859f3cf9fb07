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

#ifndef SECEQ_ZEROSUM_H_
#define SECEQ_ZEROSUM_H_

#include <optional>
#include <span>
#include <vector>

#include "seceq/arena.h"
#include "seceq/payoff.h"
#include "seceq/product.h"
#include "seceq/scalar.h"
#include "seceq/strategy.h"

namespace seceq {

// Values of the zero-sum game G_i in which `player` maximizes and the other
// players jointly minimize.
struct ValueTable {
  PlayerId player = 0;
  std::vector<Scalar> state_values;                 // [s]
  std::vector<std::vector<Scalar>> action_values;   // [s][a]
};

// Positional optimal strategies: the maximizer's and, for every other
// player, that player's share of the coalition's choices.
struct OptStrategyPair {
  FiniteMemoryStrategy maximizer;
  std::vector<FiniteMemoryStrategy> minimizers;  // one per player != maximizer
};

// Allowed actions per state. States with no allowed action are outside the
// restricted game.
using ActionMask = std::vector<std::vector<bool>>;

ActionMask FullMask(const Arena& arena);
bool InMask(const ActionMask& mask, StateId s);

// Reward model shared by the discounted and finite-horizon engines. The
// value of a play is sum_t discount^t * rewards[p][s_t][a_t] until a
// terminal state, which is worth 0. Finite-horizon games are played on the
// clock product (state x period) with discount 1.
struct RewardGame {
  Arena arena;
  std::vector<std::vector<std::vector<Scalar>>> rewards;  // [p][s][a]
  Scalar discount = 1;
  std::vector<bool> terminal;
  // Present for finite-horizon games: the clock product and its transducer.
  std::optional<ProductArena> product;
  std::optional<Transducer> transducer;

  int NumPlayers() const { return static_cast<int>(rewards.size()); }
};

// All specs discounted, or all finite-horizon. Throws UnsupportedError
// otherwise.
RewardGame RewardGameFromSpecs(const Arena& arena,
                               std::span<const PayoffSpec> specs);

// Positional solution of G_i on the game's arena. choice[s] is the optimal
// action of the controller of s (maximizer if it is `player`), smallest
// index among optimal ones. Entries outside the mask are 0.
struct ZeroSumSolution {
  ValueTable table;
  std::vector<ActionId> choice;
};

ZeroSumSolution SolveZeroSum(const RewardGame& game, PlayerId player,
                             const ActionMask& mask);

// Splits a positional choice vector into the pair of strategies.
OptStrategyPair SplitPositional(const Arena& arena, PlayerId player,
                                const std::vector<ActionId>& choice);

// Discounted G_i by strategy iteration. Throws InputError unless
// 0 < discount < 1.
std::pair<ValueTable, OptStrategyPair> SolveDiscounted(
    const Arena& arena, const std::vector<std::vector<Scalar>>& rewards,
    const Scalar& discount, PlayerId player);

// Finite-horizon G_i by backward induction over periods.
struct FiniteHorizonSolution {
  std::vector<std::vector<Scalar>> values;                // [t][s], t <= T
  std::vector<std::vector<std::vector<Scalar>>> action_values;  // [t][s][a]
  OptStrategyPair strategies;  // memory = clock 0..T
};

FiniteHorizonSolution SolveFiniteHorizon(
    const Arena& arena,
    const std::vector<std::vector<std::vector<Scalar>>>& rewards, int horizon,
    PlayerId player);

// Zero-sum game on a deterministic arena whose payoff is payoff[x] for the
// state x the play eventually settles in. payoff must be constant on every
// strongly connected component. Choices are positional; optimal from every
// state.
struct LimitGameSolution {
  std::vector<Scalar> value;
  std::vector<ActionId> choice;
};

LimitGameSolution SolveLimitGame(const Arena& arena, PlayerId player,
                                 const std::vector<Scalar>& payoff);

// Reached-set G_i on the product with the reached-target tracker.
struct ReachedSetSolution {
  ProductArena product;
  Transducer transducer;
  ValueTable table;  // over product states
  std::vector<ActionId> choice;
  OptStrategyPair strategies;  // on the base arena, reached-set memory
};

ReachedSetSolution SolveReachedSet(const Arena& arena,
                                   const ReachedSet& objective,
                                   PlayerId player);

// Expectation of the state values: sum_z q(s,a)(z) * v(z).
std::vector<std::vector<Scalar>> ActionValues(const ValueTable& table,
                                              const Arena& arena);
// Same with immediate rewards: r(s,a) + discount * sum_z q(s,a)(z) * v(z).
std::vector<std::vector<Scalar>> ActionValues(const ValueTable& table,
                                              const RewardGame& game);

}  // namespace seceq

#endif  // SECEQ_ZEROSUM_H_
