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

#ifndef SECEQ_PAYOFF_H_
#define SECEQ_PAYOFF_H_

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "seceq/arena.h"
#include "seceq/scalar.h"

namespace seceq {

// Sum over t of discount^t * rewards[s_t][a_t]. All discounted players of a
// game share one discount factor.
struct Discounted {
  std::vector<std::vector<Scalar>> rewards;  // [state][action]
  Scalar discount;
};

// Sum of rewards[t][s_t][a_t] over the first `horizon` periods.
struct FiniteHorizon {
  int horizon = 1;
  std::vector<std::vector<std::vector<Scalar>>> rewards;  // [t][state][action]
};

// Payoff depends only on which target sets the play ever visits. `values` is
// indexed by the bitmask of visited targets (bit k <-> targets[k]) and must
// have exactly 2^targets.size() entries.
struct ReachedSet {
  std::vector<std::vector<StateId>> targets;
  std::vector<Scalar> values;
};

// Payoff depends on the first period t at which the play is in `target`.
// Hitting times 0..cap map to values[t]; later hits and no hit at all map to
// `unreached`.
struct CappedHitting {
  std::vector<StateId> target;
  int cap = 0;
  std::vector<Scalar> values;  // size cap + 1
  Scalar unreached;
};

using PayoffSpec = std::variant<Discounted, FiniteHorizon, ReachedSet,
                                CappedHitting>;

enum class Family { kDiscounted, kFiniteHorizon, kReachedSet, kCappedHitting };

Family FamilyOf(const PayoffSpec& spec);
std::string FamilyName(Family family);

// ReachedSet and CappedHitting.
bool IsFiniteRange(const PayoffSpec& spec);

// Distinct values a finite-range spec can take, ascending.
std::vector<Scalar> PayoffRange(const PayoffSpec& spec);

// 2 * |N| * |S|, the default cap for hitting-time payoffs.
int DefaultHittingCap(const Arena& arena);

// Checks shapes against the arena (table sizes, state ids, discount in (0,1),
// shared discount, horizon >= 1, cap >= 0). Throws InputError.
void ValidateSpecs(const Arena& arena, std::span<const PayoffSpec> specs);

// Families shared by all players, if uniform.
bool AllOfFamily(std::span<const PayoffSpec> specs, Family family);
bool AllFiniteRange(std::span<const PayoffSpec> specs);

// Zero-filled reward tables shaped after the arena.
std::vector<std::vector<Scalar>> ZeroRewards(const Arena& arena);

// An ultimately periodic play: prefix, then cycle repeated forever. Each step
// records the state and the action played there.
struct Step {
  StateId state = 0;
  ActionId action = 0;
};

struct Lasso {
  std::vector<Step> prefix;
  std::vector<Step> cycle;
};

// Throws InputError unless the lasso starts at the initial state, uses valid
// actions, follows positive-probability transitions and closes its cycle.
void ValidateLasso(const Arena& arena, const Lasso& lasso);

// Payoff of the play in closed form (geometric series for discounted
// payoffs).
Scalar EvaluateOnLasso(const Arena& arena, const PayoffSpec& spec,
                       const Lasso& lasso);

// First period at which the lasso is in `target`, or -1 if never.
long FirstHittingTime(const Lasso& lasso, std::span<const StateId> target);

}  // namespace seceq

#endif  // SECEQ_PAYOFF_H_
