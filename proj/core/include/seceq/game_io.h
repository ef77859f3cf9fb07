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

#ifndef SECEQ_GAME_IO_H_
#define SECEQ_GAME_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seceq/arena.h"
#include "seceq/payoff.h"
#include "seceq/strategy.h"

namespace seceq {

// A game file: arena, one payoff per player and optionally a profile.
//
//   {
//     "players": ["p1", "p2"],
//     "states": ["s0", "s1"],
//     "initial": "s0",
//     "controller": {"s0": "p1", "s1": "p2"},
//     "actions": {"s0": ["a", "b"], "s1": ["c"]},
//     "transitions": [
//       {"state": "s0", "action": "a", "to": [{"target": "s1", "prob": "1/2"},
//                                             {"target": "s0", "prob": "1/2"}]},
//       ...],
//     "payoffs": {"p1": {...}, "p2": {...}},
//     "profile": {"memory": {"size": 1, "initial": 0, "next": [[0, ...]]},
//                 "choice": [{"s0": "a", "s1": "c"}]}
//   }
//
// Payoff objects by family (missing rewards are 0):
//   {"family": "discounted", "discount": "1/2",
//    "rewards": {"s0": {"a": "1"}}}
//   {"family": "finite_horizon", "horizon": 2,
//    "rewards": [{"s0": {"a": "1"}}, {}]}
//   {"family": "reached_set", "targets": [["s1"]], "values": ["0", "1"]}
//   {"family": "capped_hitting", "target": ["s1"], "cap": 4,
//    "values": ["5", "4", "3", "2", "1"], "unreached": "0"}
//
// Memory updates are listed per memory state in edge order: states in
// order, then actions, then the entries of the action's "to" list.
// Rationals are strings "n" or "n/d"; plain JSON integers are accepted.
// Entries with probability 0 are dropped. A "report" member is ignored.
struct GameDocument {
  Arena arena;
  std::vector<PayoffSpec> specs;
  std::optional<StrategyProfile> profile;
};

// Throws InputError with line and column on syntax errors, and on every
// semantic problem (unknown names, invalid arena, malformed payoffs).
GameDocument ParseGame(std::string_view text);
GameDocument LoadGame(const std::string& path);

// Canonical text form; ParseGame(SerializeGame(doc)) reproduces doc.
std::string SerializeGame(const GameDocument& doc);

}  // namespace seceq

#endif  // SECEQ_GAME_IO_H_
