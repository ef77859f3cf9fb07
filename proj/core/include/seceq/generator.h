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

#ifndef SECEQ_GENERATOR_H_
#define SECEQ_GENERATOR_H_

#include <cstdint>

#include "seceq/game_io.h"
#include "seceq/payoff.h"

namespace seceq {

// Random game description. The same config always yields the same game.
// Every state is reachable from the initial state. For reached-set and
// hitting-time payoffs a target state carries a self-loop.
struct GeneratorConfig {
  std::uint64_t seed = 1;
  int num_players = 2;
  int num_states = 4;
  int max_actions = 2;
  Family family = Family::kDiscounted;
  bool deterministic = true;
  int prob_denominator = 4;    // random transitions: probabilities k/den
  int reward_denominator = 4;  // rewards n/d with 1 <= d <= this
  int reward_bound = 2;        // |reward| <= this
  Scalar discount{1, 2};
  int horizon = 2;             // finite horizon
  int num_labels = 1;          // reached-set target sets per player
  int cap = -1;                // hitting-time cap; -1 means 2 |N| |S|
};

GameDocument Generate(const GeneratorConfig& config);

}  // namespace seceq

#endif  // SECEQ_GENERATOR_H_
