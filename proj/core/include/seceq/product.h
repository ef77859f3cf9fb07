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

#ifndef SECEQ_PRODUCT_H_
#define SECEQ_PRODUCT_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "seceq/arena.h"
#include "seceq/payoff.h"
#include "seceq/scalar.h"
#include "seceq/strategy.h"

namespace seceq {

using MemoryKey = std::uint64_t;

// Deterministic memory over plays: `initial` is the memory at the initial
// state, `update(m, s, a, z)` the memory after moving from s to z with a.
struct Transducer {
  MemoryKey initial = 0;
  std::function<MemoryKey(MemoryKey, StateId, ActionId, StateId)> update;
};

// Synchronous product of an arena with a transducer, restricted to the pairs
// reachable from (initial, transducer.initial) under any actions. Actions
// and successor order are inherited from the base state, so edge (x, a, k)
// of the product projects to edge (base_state[x], a, k).
struct ProductArena {
  Arena arena;
  std::vector<StateId> base_state;
  std::vector<MemoryKey> memory;
  std::map<std::pair<StateId, MemoryKey>, StateId> index;

  // Product state for (s, m), or -1.
  StateId Find(StateId s, MemoryKey m) const;
  int NumStates() const { return arena.NumStates(); }
};

ProductArena BuildProduct(const Arena& base, const Transducer& transducer);

// Memory needed to evaluate a list of payoffs on a play: a saturating clock,
// the set of reached target labels (pooled over all players) and, for each
// hitting-time player, the value bucket of the hit once it is decided.
//
// Along every play the key only changes finitely often; once Stable() it is
// constant and every finite-range payoff is a function of it (LimitPayoff).
class PayoffTracker {
 public:
  PayoffTracker(const Arena& arena, std::span<const PayoffSpec> specs);

  MemoryKey Initial() const { return initial_; }
  MemoryKey Advance(MemoryKey key, StateId next) const;
  Transducer AsTransducer() const;

  int Clock(MemoryKey key) const { return static_cast<int>(key & 0xff); }
  int ClockLimit() const { return clock_limit_; }
  std::uint32_t Reached(MemoryKey key) const {
    return static_cast<std::uint32_t>((key >> 8) & 0xffff);
  }
  // 0 while pending, otherwise 1 + bucket index.
  // Outcome code of a hitting-time player that can no longer hit in time.
  static constexpr int kMissed = 255;

  int Outcome(MemoryKey key, int capped_index) const {
    return static_cast<int>((key >> (24 + 8 * capped_index)) & 0xff);
  }
  bool Stable(MemoryKey key) const;

  int NumPlayers() const { return static_cast<int>(specs_.size()); }
  const Scalar& Discount(PlayerId p) const { return discount_[p]; }
  // Reward collected for playing a at s with memory `key`.
  Scalar StepReward(PlayerId p, MemoryKey key, StateId s, ActionId a) const;
  // Value of a finite-range payoff once the key is stable. Pending hits
  // count as unreached.
  Scalar LimitPayoff(PlayerId p, MemoryKey key) const;
  // Reward families only: true once no further reward can be collected by
  // any finite-horizon player and no player is discounted.
  bool RewardsExhausted(MemoryKey key) const;

  const std::vector<std::vector<StateId>>& Labels() const { return labels_; }
  int NumCapped() const { return static_cast<int>(capped_players_.size()); }
  const std::vector<PlayerId>& CappedPlayers() const { return capped_players_; }
  // Distinct values of a hitting-time player's payoff, ascending.
  const std::vector<Scalar>& Buckets(int capped_index) const {
    return buckets_[capped_index];
  }
  int Cap(int capped_index) const {
    return static_cast<int>(time_bucket_[capped_index].size()) - 1;
  }
  bool InTarget(int capped_index, StateId s) const {
    return capped_target_[capped_index][s];
  }
  // Key describing a stable configuration (clock saturated).
  MemoryKey ConfigurationKey(std::uint32_t reached,
                             std::span<const int> outcomes) const;

 private:
  std::vector<PayoffSpec> specs_;
  std::vector<Scalar> discount_;
  std::vector<std::vector<StateId>> labels_;
  std::vector<std::uint32_t> state_labels_;           // [state] -> mask
  std::vector<std::vector<int>> player_label_;        // [player][k] -> pooled
  std::vector<PlayerId> capped_players_;
  std::vector<int> capped_index_;                     // [player] -> index or -1
  std::vector<std::vector<bool>> capped_target_;      // [index][state]
  std::vector<std::vector<Scalar>> buckets_;          // [index]
  std::vector<std::vector<int>> time_bucket_;         // [index][t]
  int clock_limit_ = 0;
  int reward_horizon_ = 0;
  bool any_discounted_ = false;
  MemoryKey initial_ = 0;
};

// Turns a profile on product.arena into the equivalent profile on the base
// arena; its memory pairs the profile memory with the transducer memory.
StrategyProfile LiftProfile(const Arena& base, const ProductArena& product,
                            const Transducer& transducer,
                            const StrategyProfile& on_product);

// Same for a positional strategy on the product: memory = transducer memory.
FiniteMemoryStrategy LiftPositional(const Arena& base,
                                    const ProductArena& product,
                                    const Transducer& transducer,
                                    PlayerId owner,
                                    std::span<const ActionId> choice);

}  // namespace seceq

#endif  // SECEQ_PRODUCT_H_
