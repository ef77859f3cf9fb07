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

#include "seceq/generator.h"

#include <algorithm>
#include <random>
#include <string>

#include "seceq/errors.h"

namespace seceq {

namespace {

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}
  // Uniform on [lo, hi]; plain modulo keeps the stream identical on every
  // standard library.
  int Uniform(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Scalar Reward(int bound, int max_den) {
    const int den = Uniform(1, max_den);
    Scalar value(Uniform(-bound * den, bound * den), den);
    value.canonicalize();
    return value;
  }

 private:
  std::mt19937_64 engine_;
};

struct Entry {
  StateId state;
  ActionId action;
  int index;
};

}  // namespace

GameDocument Generate(const GeneratorConfig& c) {
  if (c.num_players < 1 || c.num_states < 1 || c.max_actions < 1) {
    throw InputError("generator: players, states and actions must be positive");
  }
  if (!c.deterministic && c.prob_denominator < 1) {
    throw InputError("generator: probability denominator must be positive");
  }
  Random rng(c.seed);
  const int n = c.num_states;
  ArenaBuilder builder(c.num_players);
  std::vector<std::vector<Distribution>> dist(n);
  std::vector<PlayerId> controller(n);
  for (StateId s = 0; s < n; ++s) {
    controller[s] = rng.Uniform(0, c.num_players - 1);
    const int actions = rng.Uniform(1, c.max_actions);
    for (int a = 0; a < actions; ++a) {
      Distribution d;
      const int den = c.prob_denominator;
      if (c.deterministic || den < 2 || n < 2 || rng.Uniform(0, 1) == 0) {
        d.push_back({rng.Uniform(0, n - 1), Scalar(1)});
      } else {
        const int first = rng.Uniform(1, den - 1);
        Scalar p(first, den);
        p.canonicalize();
        d.push_back({rng.Uniform(0, n - 1), p});
        d.push_back({rng.Uniform(0, n - 1), 1 - p});
      }
      dist[s].push_back(std::move(d));
    }
  }

  // Tree edges: every state s > 0 gets an incoming entry from a smaller one.
  std::vector<std::vector<std::vector<bool>>> locked(n);
  for (StateId s = 0; s < n; ++s) {
    for (const Distribution& d : dist[s]) locked[s].emplace_back(d.size(), false);
  }
  for (StateId s = 1; s < n; ++s) {
    std::vector<Entry> free;
    for (StateId p = 0; p < s; ++p) {
      for (ActionId a = 0; a < static_cast<ActionId>(dist[p].size()); ++a) {
        for (int k = 0; k < static_cast<int>(dist[p][a].size()); ++k) {
          if (!locked[p][a][k]) free.push_back({p, a, k});
        }
      }
    }
    if (free.empty()) throw InternalError("generator: no free entry");
    const Entry e = free[rng.Uniform(0, static_cast<int>(free.size()) - 1)];
    dist[e.state][e.action][e.index].target = s;
    locked[e.state][e.action][e.index] = true;
  }

  // A target state with a self-loop, for the reachability families.
  StateId looped = -1;
  if (c.family == Family::kReachedSet || c.family == Family::kCappedHitting) {
    std::vector<Entry> free;
    for (StateId s = 0; s < n; ++s) {
      for (ActionId a = 0; a < static_cast<ActionId>(dist[s].size()); ++a) {
        for (int k = 0; k < static_cast<int>(dist[s][a].size()); ++k) {
          if (!locked[s][a][k]) free.push_back({s, a, k});
        }
      }
    }
    const Entry e = free[rng.Uniform(0, static_cast<int>(free.size()) - 1)];
    looped = e.state;
    if (dist[looped][e.action].size() == 1 || c.deterministic) {
      dist[looped][e.action][e.index].target = looped;
    } else {
      dist[looped][e.action] = {{looped, Scalar(1)}};
    }
  }

  for (StateId s = 0; s < n; ++s) {
    builder.AddState(controller[s]);
    for (Distribution& d : dist[s]) {
      // Merge repeated successors.
      Distribution merged;
      for (const Transition& t : d) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const Transition& m) { return m.target == t.target; });
        if (it == merged.end()) {
          merged.push_back(t);
        } else {
          it->prob += t.prob;
        }
      }
      builder.AddAction(s, std::move(merged));
    }
  }
  builder.SetInitial(0);
  GameDocument doc;
  doc.arena = builder.Build();
  const Arena& arena = doc.arena;

  auto random_targets = [&](bool include_looped) {
    std::vector<StateId> t;
    if (include_looped) t.push_back(looped);
    const int extra = rng.Uniform(include_looped ? 0 : 1, 1);
    for (int k = 0; k < extra; ++k) {
      StateId s = rng.Uniform(0, n - 1);
      if (std::find(t.begin(), t.end(), s) == t.end()) t.push_back(s);
    }
    std::sort(t.begin(), t.end());
    return t;
  };

  switch (c.family) {
    case Family::kDiscounted:
      for (PlayerId p = 0; p < c.num_players; ++p) {
        Discounted d{ZeroRewards(arena), c.discount};
        for (auto& row : d.rewards) {
          for (Scalar& r : row) r = rng.Reward(c.reward_bound, c.reward_denominator);
        }
        doc.specs.push_back(std::move(d));
      }
      break;
    case Family::kFiniteHorizon:
      for (PlayerId p = 0; p < c.num_players; ++p) {
        FiniteHorizon f{c.horizon, {}};
        for (int t = 0; t < c.horizon; ++t) {
          auto table = ZeroRewards(arena);
          for (auto& row : table) {
            for (Scalar& r : row) r = rng.Reward(c.reward_bound, c.reward_denominator);
          }
          f.rewards.push_back(std::move(table));
        }
        doc.specs.push_back(std::move(f));
      }
      break;
    case Family::kReachedSet: {
      std::vector<std::vector<StateId>> pool;
      const int labels = std::max(1, c.num_labels);
      pool.push_back(random_targets(true));
      for (int k = 1; k < labels; ++k) pool.push_back(random_targets(false));
      for (PlayerId p = 0; p < c.num_players; ++p) {
        ReachedSet r;
        const int m = rng.Uniform(1, labels);
        for (int k = 0; k < m; ++k) {
          r.targets.push_back(pool[rng.Uniform(0, labels - 1)]);
        }
        for (int mask = 0; mask < (1 << m); ++mask) {
          r.values.push_back(Scalar(rng.Uniform(0, 2)));
        }
        doc.specs.push_back(std::move(r));
      }
      break;
    }
    case Family::kCappedHitting: {
      const int cap = c.cap >= 0 ? c.cap : DefaultHittingCap(arena);
      for (PlayerId p = 0; p < c.num_players; ++p) {
        CappedHitting h;
        h.target = random_targets(rng.Uniform(0, 1) == 0);
        h.cap = cap;
        h.unreached = 0;
        // Non-increasing step function with at most four levels above 0.
        const int levels = rng.Uniform(1, 4);
        std::vector<int> cuts;
        for (int k = 1; k < levels; ++k) cuts.push_back(rng.Uniform(1, std::max(1, cap)));
        std::sort(cuts.begin(), cuts.end());
        int value = levels + rng.Uniform(0, 2);
        size_t next_cut = 0;
        for (int t = 0; t <= cap; ++t) {
          while (next_cut < cuts.size() && cuts[next_cut] <= t) {
            ++next_cut;
            value = std::max(1, value - 1);
          }
          h.values.push_back(Scalar(value));
        }
        doc.specs.push_back(std::move(h));
      }
      break;
    }
  }
  return doc;
}

}  // namespace seceq
