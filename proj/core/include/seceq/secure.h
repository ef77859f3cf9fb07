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

#ifndef SECEQ_SECURE_H_
#define SECEQ_SECURE_H_

#include <span>
#include <vector>

#include "seceq/arena.h"
#include "seceq/eliminate.h"
#include "seceq/payoff.h"
#include "seceq/strategy.h"
#include "seceq/verify.h"
#include "seceq/zerosum.h"

namespace seceq {

// Punishers of every player in G (level 0) and in G^infinity (last level),
// read off the elimination trace. choice vectors are positional on the
// reward game's arena.
struct PunishmentKit {
  std::vector<std::vector<ActionId>> full;        // [player][state]
  std::vector<std::vector<ActionId>> restricted;  // [player][state]
};

PunishmentKit MakePunishmentKit(const EliminationTrace& trace);

// rho*: positional profile on G^infinity minimizing sum_i w_i u_i.
struct SumMinimizer {
  std::vector<ActionId> choice;
  std::vector<Scalar> payoffs;  // from the initial state
  Scalar weighted_sum;
};

// weights empty means all ones; negative weights throw InputError.
SumMinimizer MinimizeSumProfile(const RewardGame& game, const ActionMask& mask,
                                std::span<const Scalar> weights = {});

// Memory of the assembled profile: 0 is "nobody deviated"; 1 + 2i + out
// records that player i deviated first, with out = 0 while the play has
// stayed inside G^infinity since then.
struct DeviatorLabel {
  int num_players = 0;
  int Size() const { return 1 + 2 * num_players; }
  static constexpr int kNone = 0;
  static int Encode(PlayerId deviator, bool outside) {
    return 1 + 2 * deviator + (outside ? 1 : 0);
  }
  static PlayerId Deviator(int m) { return (m - 1) / 2; }
  static bool Outside(int m) { return (m - 1) % 2 == 1; }
};

// Memory automaton of the label over the given arena.
MemoryAutomaton BuildLabelAutomaton(const Arena& arena,
                                    const std::vector<ActionId>& rho,
                                    const ActionMask& restricted);

StrategyProfile AssembleSecureProfile(const Arena& arena,
                                      const std::vector<ActionId>& rho,
                                      const ActionMask& restricted,
                                      const PunishmentKit& kit);

struct SecureResult {
  RewardGame game;
  EliminationTrace trace;
  SumMinimizer rho;
  StrategyProfile on_game;  // profile on game.arena
  StrategyProfile profile;  // profile on the input arena
  EquilibriumReport report;
};

// All-discounted (shared discount) or all-finite-horizon payoffs.
SecureResult ConstructSecureEquilibrium(const Arena& arena,
                                        std::span<const PayoffSpec> specs,
                                        std::span<const Scalar> weights = {});

}  // namespace seceq

#endif  // SECEQ_SECURE_H_
