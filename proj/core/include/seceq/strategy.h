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

#ifndef SECEQ_STRATEGY_H_
#define SECEQ_STRATEGY_H_

#include <span>
#include <vector>

#include "seceq/arena.h"

namespace seceq {

// Deterministic memory read synchronously with the play. After the play
// moves along edge (s, a, k) the memory goes from m to Next(m, edge). Actions
// are observable, so deviations can be detected by the update.
struct MemoryAutomaton {
  int size = 1;
  int initial = 0;
  int num_edges = 0;
  std::vector<int> next;  // [m * num_edges + edge]

  int Next(int m, int edge) const { return next[m * num_edges + edge]; }
  int Next(const Arena& arena, int m, StateId s, ActionId a, int k) const {
    return Next(m, arena.EdgeIndex(s, a, k));
  }
  void SetNext(int m, int edge, int target) {
    next[m * num_edges + edge] = target;
  }

  // `size` memory states, every update a self-loop.
  static MemoryAutomaton Identity(const Arena& arena, int size, int initial);
};

// Strategy of one player: choice[m][s] is the action taken at state s with
// memory m. Entries at states the owner does not control are ignored.
struct FiniteMemoryStrategy {
  PlayerId owner = 0;
  MemoryAutomaton memory;
  std::vector<std::vector<ActionId>> choice;

  ActionId Choose(int m, StateId s) const { return choice[m][s]; }
};

// Pure profile sharing one memory automaton: the controller of s plays
// choice[m][s].
struct StrategyProfile {
  MemoryAutomaton memory;
  std::vector<std::vector<ActionId>> choice;

  ActionId Choose(int m, StateId s) const { return choice[m][s]; }
};

StrategyProfile PositionalProfile(const Arena& arena,
                                  std::vector<ActionId> choice);
FiniteMemoryStrategy PositionalStrategy(const Arena& arena, PlayerId owner,
                                        std::vector<ActionId> choice);

// Player `owner`'s part of a profile.
FiniteMemoryStrategy StrategyOf(const StrategyProfile& profile,
                                PlayerId owner);

// Joins one strategy per player into a profile whose memory is the product of
// their memories (restricted to tuples reachable from the initial tuple).
StrategyProfile CombineStrategies(const Arena& arena,
                                  std::span<const FiniteMemoryStrategy> parts);

// The profile in which deviation.owner plays `deviation` and everybody else
// keeps playing `profile`. Memory is interned along the plays of the
// resulting profile only; every other update goes to an absorbing sink.
StrategyProfile WithDeviation(const Arena& arena,
                              const StrategyProfile& profile,
                              const FiniteMemoryStrategy& deviation);

// Throws InputError on shape errors or out-of-range actions/memories.
void ValidateProfile(const Arena& arena, const StrategyProfile& profile);
void ValidateStrategy(const Arena& arena, const FiniteMemoryStrategy& strategy);

}  // namespace seceq

#endif  // SECEQ_STRATEGY_H_
