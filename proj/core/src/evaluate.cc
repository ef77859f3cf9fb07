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

#include "seceq/evaluate.h"

#include <deque>
#include <map>
#include <tuple>

#include "seceq/errors.h"
#include "seceq/markov.h"
#include "seceq/product.h"

namespace seceq {

std::vector<Scalar> ExpectedPayoffs(const Arena& arena,
                                    std::span<const PayoffSpec> specs,
                                    const StrategyProfile& profile) {
  RequireValidArena(arena);
  ValidateSpecs(arena, specs);
  ValidateProfile(arena, profile);
  const PayoffTracker tracker(arena, specs);

  using Node = std::tuple<StateId, MemoryKey, int>;
  std::map<Node, int> ids;
  std::vector<Node> nodes;
  std::deque<int> queue;
  auto intern = [&](const Node& node) {
    auto [it, inserted] = ids.emplace(node, static_cast<int>(nodes.size()));
    if (inserted) {
      nodes.push_back(node);
      queue.push_back(it->second);
    }
    return it->second;
  };
  intern({arena.Initial(), tracker.Initial(), profile.memory.initial});
  std::vector<Successors> next;
  std::vector<ActionId> played;
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    const auto [s, key, m] = nodes[id];
    const ActionId a = profile.Choose(m, s);
    const Distribution& dist = arena.Next(s, a);
    Successors out;
    for (size_t k = 0; k < dist.size(); ++k) {
      const StateId z = dist[k].target;
      const int m2 = profile.memory.Next(arena, m, s, a, static_cast<int>(k));
      out.emplace_back(intern({z, tracker.Advance(key, z), m2}), dist[k].prob);
    }
    if (next.size() <= static_cast<size_t>(id)) {
      next.resize(id + 1);
      played.resize(id + 1);
    }
    next[id] = std::move(out);
    played[id] = a;
  }

  std::vector<Scalar> payoffs;
  Chain chain;
  chain.next = std::move(next);
  const size_t n = nodes.size();
  for (PlayerId p = 0; p < arena.NumPlayers(); ++p) {
    chain.discount = tracker.Discount(p);
    chain.reward.assign(n, Scalar(0));
    chain.fixed.assign(n, Scalar(0));
    for (size_t x = 0; x < n; ++x) {
      const auto& [s, key, m] = nodes[x];
      chain.reward[x] = tracker.StepReward(p, key, s, played[x]);
      chain.fixed[x] = tracker.LimitPayoff(p, key);
    }
    payoffs.push_back(SolveChain(chain)[0]);
  }
  return payoffs;
}

Lasso InducedLasso(const Arena& arena, const StrategyProfile& profile) {
  if (!arena.IsDeterministic()) {
    throw InputError("induced lasso needs a deterministic arena");
  }
  std::map<std::pair<StateId, int>, size_t> seen;
  std::vector<Step> steps;
  StateId s = arena.Initial();
  int m = profile.memory.initial;
  while (seen.find({s, m}) == seen.end()) {
    seen.emplace(std::make_pair(s, m), steps.size());
    const ActionId a = profile.Choose(m, s);
    steps.push_back({s, a});
    m = profile.memory.Next(arena, m, s, a, 0);
    s = arena.Next(s, a)[0].target;
  }
  const size_t start = seen.at({s, m});
  Lasso lasso;
  lasso.prefix.assign(steps.begin(), steps.begin() + start);
  lasso.cycle.assign(steps.begin() + start, steps.end());
  return lasso;
}

}  // namespace seceq
