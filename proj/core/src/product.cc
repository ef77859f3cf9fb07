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

#include "seceq/product.h"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "seceq/errors.h"

namespace seceq {

StateId ProductArena::Find(StateId s, MemoryKey m) const {
  auto it = index.find({s, m});
  return it == index.end() ? -1 : it->second;
}

ProductArena BuildProduct(const Arena& base, const Transducer& transducer) {
  ProductArena product;
  std::deque<StateId> queue;
  auto intern = [&](StateId s, MemoryKey m) {
    auto [it, inserted] = product.index.emplace(
        std::make_pair(s, m), static_cast<StateId>(product.base_state.size()));
    if (inserted) {
      product.base_state.push_back(s);
      product.memory.push_back(m);
      queue.push_back(it->second);
    }
    return it->second;
  };
  intern(base.Initial(), transducer.initial);
  std::vector<std::vector<std::vector<StateId>>> succ;  // [x][a][k]
  while (!queue.empty()) {
    StateId x = queue.front();
    queue.pop_front();
    StateId s = product.base_state[x];
    MemoryKey m = product.memory[x];
    if (succ.size() <= static_cast<size_t>(x)) succ.resize(x + 1);
    succ[x].resize(base.NumActions(s));
    for (ActionId a = 0; a < base.NumActions(s); ++a) {
      for (const Transition& t : base.Next(s, a)) {
        succ[x][a].push_back(intern(t.target, transducer.update(m, s, a, t.target)));
      }
    }
  }
  std::vector<StateSpec> states(product.base_state.size());
  for (size_t x = 0; x < states.size(); ++x) {
    StateId s = product.base_state[x];
    const StateSpec& from = base.States()[s];
    states[x].name = from.name + "#" + std::to_string(x);
    states[x].controller = from.controller;
    for (ActionId a = 0; a < base.NumActions(s); ++a) {
      ActionSpec action{from.actions[a].name, {}};
      const Distribution& dist = base.Next(s, a);
      for (size_t k = 0; k < dist.size(); ++k) {
        action.next.push_back(Transition{succ[x][a][k], dist[k].prob});
      }
      states[x].actions.push_back(std::move(action));
    }
  }
  product.arena = Arena(base.PlayerNames(), std::move(states), 0);
  return product;
}

PayoffTracker::PayoffTracker(const Arena& arena,
                             std::span<const PayoffSpec> specs)
    : specs_(specs.begin(), specs.end()) {
  const int n = static_cast<int>(specs_.size());
  discount_.assign(n, Scalar(1));
  player_label_.resize(n);
  capped_index_.assign(n, -1);
  state_labels_.assign(arena.NumStates(), 0);
  std::map<std::vector<StateId>, int> pooled;
  for (PlayerId p = 0; p < n; ++p) {
    const PayoffSpec& spec = specs_[p];
    if (const auto* d = std::get_if<Discounted>(&spec)) {
      discount_[p] = d->discount;
      any_discounted_ = true;
    } else if (const auto* f = std::get_if<FiniteHorizon>(&spec)) {
      reward_horizon_ = std::max(reward_horizon_, f->horizon);
      clock_limit_ = std::max(clock_limit_, f->horizon);
    } else if (const auto* r = std::get_if<ReachedSet>(&spec)) {
      for (const auto& target : r->targets) {
        std::vector<StateId> key = target;
        std::sort(key.begin(), key.end());
        key.erase(std::unique(key.begin(), key.end()), key.end());
        auto [it, inserted] =
            pooled.emplace(key, static_cast<int>(labels_.size()));
        if (inserted) labels_.push_back(key);
        player_label_[p].push_back(it->second);
      }
    } else if (const auto* c = std::get_if<CappedHitting>(&spec)) {
      int index = static_cast<int>(capped_players_.size());
      capped_players_.push_back(p);
      capped_index_[p] = index;
      std::vector<bool> in_target(arena.NumStates(), false);
      for (StateId s : c->target) in_target[s] = true;
      capped_target_.push_back(std::move(in_target));
      std::vector<Scalar> buckets = PayoffRange(spec);
      auto bucket_of = [&](const Scalar& v) {
        return static_cast<int>(
            std::lower_bound(buckets.begin(), buckets.end(), v) -
            buckets.begin());
      };
      std::vector<int> by_time;
      for (const Scalar& v : c->values) by_time.push_back(bucket_of(v));
      time_bucket_.push_back(std::move(by_time));
      if (buckets.size() > 254) {
        throw UnsupportedError("hitting-time payoff with more than 254 values");
      }
      buckets_.push_back(std::move(buckets));
      clock_limit_ = std::max(clock_limit_, c->cap + 1);
    }
  }
  if (labels_.size() > 16) {
    throw UnsupportedError("more than 16 distinct target sets across players");
  }
  if (capped_players_.size() > 5) {
    throw UnsupportedError("more than 5 hitting-time players");
  }
  if (clock_limit_ > 255) throw UnsupportedError("clock beyond 255 periods");
  for (size_t k = 0; k < labels_.size(); ++k) {
    for (StateId s : labels_[k]) state_labels_[s] |= std::uint32_t{1} << k;
  }

  // Memory at the initial state: period 0 has been observed.
  MemoryKey key = static_cast<MemoryKey>(state_labels_[arena.Initial()]) << 8;
  for (int j = 0; j < NumCapped(); ++j) {
    int outcome = 0;
    if (capped_target_[j][arena.Initial()]) outcome = 1 + time_bucket_[j][0];
    if (outcome == 0 && clock_limit_ == 0) outcome = kMissed;
    key |= static_cast<MemoryKey>(outcome) << (24 + 8 * j);
  }
  initial_ = key;
}

MemoryKey PayoffTracker::Advance(MemoryKey key, StateId next) const {
  int clock = std::min(Clock(key) + 1, clock_limit_);
  MemoryKey out = static_cast<MemoryKey>(clock);
  out |= static_cast<MemoryKey>(Reached(key) | state_labels_[next]) << 8;
  for (int j = 0; j < NumCapped(); ++j) {
    int outcome = Outcome(key, j);
    if (outcome == 0) {
      const int cap = static_cast<int>(time_bucket_[j].size()) - 1;
      if (clock > cap) {
        outcome = kMissed;
      } else if (capped_target_[j][next]) {
        outcome = 1 + time_bucket_[j][clock];
      }
    }
    out |= static_cast<MemoryKey>(outcome) << (24 + 8 * j);
  }
  return out;
}

Transducer PayoffTracker::AsTransducer() const {
  auto self = std::make_shared<const PayoffTracker>(*this);
  return Transducer{initial_,
                    [self](MemoryKey m, StateId, ActionId, StateId next) {
                      return self->Advance(m, next);
                    }};
}

bool PayoffTracker::Stable(MemoryKey key) const {
  if (Clock(key) != clock_limit_) return false;
  for (int j = 0; j < NumCapped(); ++j) {
    if (Outcome(key, j) == 0) return false;
  }
  return true;
}

Scalar PayoffTracker::StepReward(PlayerId p, MemoryKey key, StateId s,
                                 ActionId a) const {
  const PayoffSpec& spec = specs_[p];
  if (const auto* d = std::get_if<Discounted>(&spec)) return d->rewards[s][a];
  if (const auto* f = std::get_if<FiniteHorizon>(&spec)) {
    int t = Clock(key);
    return t < f->horizon ? f->rewards[t][s][a] : Scalar(0);
  }
  return Scalar(0);
}

Scalar PayoffTracker::LimitPayoff(PlayerId p, MemoryKey key) const {
  const PayoffSpec& spec = specs_[p];
  if (const auto* r = std::get_if<ReachedSet>(&spec)) {
    std::uint32_t reached = Reached(key);
    size_t mask = 0;
    for (size_t k = 0; k < player_label_[p].size(); ++k) {
      if (reached & (std::uint32_t{1} << player_label_[p][k])) {
        mask |= size_t{1} << k;
      }
    }
    return r->values[mask];
  }
  if (const auto* c = std::get_if<CappedHitting>(&spec)) {
    int j = capped_index_[p];
    int outcome = Outcome(key, j);
    if (outcome == 0 || outcome == kMissed) return c->unreached;
    return buckets_[j][outcome - 1];
  }
  return Scalar(0);
}

bool PayoffTracker::RewardsExhausted(MemoryKey key) const {
  return !any_discounted_ && Clock(key) >= reward_horizon_;
}

MemoryKey PayoffTracker::ConfigurationKey(std::uint32_t reached,
                                          std::span<const int> outcomes) const {
  MemoryKey key = static_cast<MemoryKey>(clock_limit_);
  key |= static_cast<MemoryKey>(reached) << 8;
  for (int j = 0; j < NumCapped(); ++j) {
    key |= static_cast<MemoryKey>(outcomes[j]) << (24 + 8 * j);
  }
  return key;
}

namespace {

// Distinct transducer keys of the product, numbered in first-seen order.
std::map<MemoryKey, int> KeyIds(const ProductArena& product,
                                std::vector<MemoryKey>* keys) {
  std::map<MemoryKey, int> ids;
  for (MemoryKey m : product.memory) {
    if (ids.emplace(m, static_cast<int>(keys->size())).second) {
      keys->push_back(m);
    }
  }
  return ids;
}

}  // namespace

StrategyProfile LiftProfile(const Arena& base, const ProductArena& product,
                            const Transducer& transducer,
                            const StrategyProfile& on_product) {
  std::vector<MemoryKey> keys;
  std::map<MemoryKey, int> key_id = KeyIds(product, &keys);
  const int num_keys = static_cast<int>(keys.size());
  const int inner = on_product.memory.size;
  auto pack = [&](int m, int key) { return m * num_keys + key; };

  StrategyProfile out;
  out.memory.size = inner * num_keys;
  out.memory.initial = pack(on_product.memory.initial, key_id.at(transducer.initial));
  out.memory.num_edges = base.NumEdges();
  out.memory.next.resize(static_cast<size_t>(out.memory.size) * base.NumEdges());
  out.choice.assign(out.memory.size, std::vector<ActionId>(base.NumStates(), 0));
  for (int m = 0; m < inner; ++m) {
    for (int key = 0; key < num_keys; ++key) {
      const int id = pack(m, key);
      for (StateId s = 0; s < base.NumStates(); ++s) {
        StateId x = product.Find(s, keys[key]);
        if (x >= 0) out.choice[id][s] = on_product.Choose(m, x);
        for (ActionId a = 0; a < base.NumActions(s); ++a) {
          const Distribution& dist = base.Next(s, a);
          for (size_t k = 0; k < dist.size(); ++k) {
            const int edge = base.EdgeIndex(s, a, static_cast<int>(k));
            int target = id;  // (s, key) never occurs together on a play
            if (x >= 0) {
              int m2 = on_product.memory.Next(
                  m, product.arena.EdgeIndex(x, a, static_cast<int>(k)));
              target = pack(m2, key_id.at(transducer.update(keys[key], s, a,
                                                            dist[k].target)));
            }
            out.memory.SetNext(id, edge, target);
          }
        }
      }
    }
  }
  return out;
}

FiniteMemoryStrategy LiftPositional(const Arena& base,
                                    const ProductArena& product,
                                    const Transducer& transducer,
                                    PlayerId owner,
                                    std::span<const ActionId> choice) {
  StrategyProfile positional;
  positional.memory = MemoryAutomaton::Identity(product.arena, 1, 0);
  positional.choice.emplace_back(choice.begin(), choice.end());
  StrategyProfile lifted = LiftProfile(base, product, transducer, positional);
  return StrategyOf(lifted, owner);
}

}  // namespace seceq
