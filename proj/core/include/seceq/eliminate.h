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

#ifndef SECEQ_ELIMINATE_H_
#define SECEQ_ELIMINATE_H_

#include <utility>
#include <vector>

#include "seceq/arena.h"
#include "seceq/zerosum.h"

namespace seceq {

// One game G^k of the elimination sequence: the states S^k, the actions
// A^k (empty outside S^k) and the solution of every G_i restricted to them.
struct EliminationLevel {
  int index = 0;
  std::vector<bool> states;
  ActionMask actions;
  std::vector<ZeroSumSolution> solutions;  // [player]

  const ValueTable& Values(PlayerId p) const { return solutions[p].table; }
};

// phi value of states that survive every level.
inline constexpr int kInfiniteLevel = -1;
// phi value of states outside S^0 (unreachable from the initial state).
inline constexpr int kNeverReached = -2;

struct EliminationTrace {
  std::vector<EliminationLevel> levels;  // the last one is G^infinity
  std::vector<int> phi;
  // Actions deleted when going from level k to k + 1.
  std::vector<std::vector<std::pair<StateId, ActionId>>> removed;

  const EliminationLevel& Fixpoint() const { return levels.back(); }
};

// Level 0: states reachable from the initial state, every action.
EliminationLevel InitialLevel(const RewardGame& game);

// Actions a in A^k(s) with v_{i(s)}(s,a) = v_{i(s)}(s), exactly.
ActionMask OptimalActions(const RewardGame& game,
                          const EliminationLevel& level);

EliminationLevel EliminateStep(const RewardGame& game,
                               const EliminationLevel& level);

// Iterates until no action is deleted.
EliminationTrace EliminateFixpoint(const RewardGame& game);

// States reachable from the initial state using only masked actions.
std::vector<bool> ReachableUnder(const Arena& arena, const ActionMask& mask);

}  // namespace seceq

#endif  // SECEQ_ELIMINATE_H_
