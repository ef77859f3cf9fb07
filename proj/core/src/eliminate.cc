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

#include "seceq/eliminate.h"

#include <deque>

namespace seceq {

std::vector<bool> ReachableUnder(const Arena& arena, const ActionMask& mask) {
  std::vector<bool> seen(arena.NumStates(), false);
  std::deque<StateId> queue{arena.Initial()};
  seen[arena.Initial()] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (ActionId a = 0; a < arena.NumActions(s); ++a) {
      if (!mask[s][a]) continue;
      for (const Transition& t : arena.Next(s, a)) {
        if (!seen[t.target]) {
          seen[t.target] = true;
          queue.push_back(t.target);
        }
      }
    }
  }
  return seen;
}

namespace {

EliminationLevel MakeLevel(const RewardGame& game, int index,
                           ActionMask actions) {
  EliminationLevel level;
  level.index = index;
  level.states = ReachableUnder(game.arena, actions);
  for (StateId s = 0; s < game.arena.NumStates(); ++s) {
    if (!level.states[s]) actions[s].assign(actions[s].size(), false);
  }
  level.actions = std::move(actions);
  for (PlayerId p = 0; p < game.NumPlayers(); ++p) {
    level.solutions.push_back(SolveZeroSum(game, p, level.actions));
  }
  return level;
}

}  // namespace

EliminationLevel InitialLevel(const RewardGame& game) {
  return MakeLevel(game, 0, FullMask(game.arena));
}

ActionMask OptimalActions(const RewardGame& game,
                          const EliminationLevel& level) {
  ActionMask out = level.actions;
  for (StateId s = 0; s < game.arena.NumStates(); ++s) {
    if (!level.states[s]) continue;
    const ValueTable& table = level.Values(game.arena.Controller(s));
    for (ActionId a = 0; a < game.arena.NumActions(s); ++a) {
      if (out[s][a] && table.action_values[s][a] != table.state_values[s]) {
        out[s][a] = false;
      }
    }
  }
  return out;
}

EliminationLevel EliminateStep(const RewardGame& game,
                               const EliminationLevel& level) {
  return MakeLevel(game, level.index + 1, OptimalActions(game, level));
}

EliminationTrace EliminateFixpoint(const RewardGame& game) {
  EliminationTrace trace;
  trace.levels.push_back(InitialLevel(game));
  while (true) {
    const EliminationLevel& last = trace.levels.back();
    ActionMask optimal = OptimalActions(game, last);
    if (optimal == last.actions) break;
    EliminationLevel next = MakeLevel(game, last.index + 1, std::move(optimal));
    std::vector<std::pair<StateId, ActionId>> removed;
    for (StateId s = 0; s < game.arena.NumStates(); ++s) {
      for (ActionId a = 0; a < game.arena.NumActions(s); ++a) {
        if (last.actions[s][a] && !next.actions[s][a]) removed.emplace_back(s, a);
      }
    }
    trace.removed.push_back(std::move(removed));
    trace.levels.push_back(std::move(next));
  }
  const int n = game.arena.NumStates();
  trace.phi.assign(n, kNeverReached);
  for (StateId s = 0; s < n; ++s) {
    for (const EliminationLevel& level : trace.levels) {
      if (level.states[s]) trace.phi[s] = level.index;
    }
    if (trace.Fixpoint().states[s]) trace.phi[s] = kInfiniteLevel;
  }
  return trace;
}

}  // namespace seceq
