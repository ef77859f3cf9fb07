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

#include "seceq/zerosum.h"

#include <algorithm>

#include "seceq/errors.h"
#include "seceq/markov.h"

namespace seceq {

ActionMask FullMask(const Arena& arena) {
  ActionMask mask(arena.NumStates());
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    mask[s].assign(arena.NumActions(s), true);
  }
  return mask;
}

bool InMask(const ActionMask& mask, StateId s) {
  return std::find(mask[s].begin(), mask[s].end(), true) != mask[s].end();
}

RewardGame RewardGameFromSpecs(const Arena& arena,
                               std::span<const PayoffSpec> specs) {
  RequireValidArena(arena);
  ValidateSpecs(arena, specs);
  RewardGame game;
  const int n = arena.NumPlayers();
  if (AllOfFamily(specs, Family::kDiscounted)) {
    game.arena = arena;
    game.discount = std::get<Discounted>(specs[0]).discount;
    for (PlayerId p = 0; p < n; ++p) {
      game.rewards.push_back(std::get<Discounted>(specs[p]).rewards);
    }
    game.terminal.assign(arena.NumStates(), false);
    return game;
  }
  if (!AllOfFamily(specs, Family::kFiniteHorizon)) {
    throw UnsupportedError(
        "reward engine needs all-discounted or all-finite-horizon payoffs");
  }
  PayoffTracker tracker(arena, specs);
  Transducer transducer = tracker.AsTransducer();
  ProductArena product = BuildProduct(arena, transducer);
  game.arena = product.arena;
  game.discount = 1;
  game.rewards.assign(n, {});
  for (PlayerId p = 0; p < n; ++p) {
    for (StateId x = 0; x < product.NumStates(); ++x) {
      const StateId s = product.base_state[x];
      std::vector<Scalar> row;
      for (ActionId a = 0; a < arena.NumActions(s); ++a) {
        row.push_back(tracker.StepReward(p, product.memory[x], s, a));
      }
      game.rewards[p].push_back(std::move(row));
    }
  }
  for (StateId x = 0; x < product.NumStates(); ++x) {
    game.terminal.push_back(tracker.RewardsExhausted(product.memory[x]));
  }
  game.product = std::move(product);
  game.transducer = std::move(transducer);
  return game;
}

std::vector<std::vector<Scalar>> ActionValues(const ValueTable& table,
                                              const Arena& arena) {
  std::vector<std::vector<Scalar>> out(arena.NumStates());
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    for (ActionId a = 0; a < arena.NumActions(s); ++a) {
      Scalar q = 0;
      for (const Transition& t : arena.Next(s, a)) {
        q += t.prob * table.state_values[t.target];
      }
      out[s].push_back(q);
    }
  }
  return out;
}

std::vector<std::vector<Scalar>> ActionValues(const ValueTable& table,
                                              const RewardGame& game) {
  std::vector<std::vector<Scalar>> out = ActionValues(table, game.arena);
  for (StateId s = 0; s < game.arena.NumStates(); ++s) {
    for (ActionId a = 0; a < game.arena.NumActions(s); ++a) {
      if (game.terminal[s]) {
        out[s][a] = 0;
      } else {
        out[s][a] = game.rewards[table.player][s][a] + game.discount * out[s][a];
      }
    }
  }
  return out;
}

ZeroSumSolution SolveZeroSum(const RewardGame& game, PlayerId player,
                             const ActionMask& mask) {
  const Arena& arena = game.arena;
  const int n = arena.NumStates();
  Mdp mdp;
  mdp.discount = game.discount;
  mdp.actions.resize(n);
  mdp.fixed.assign(n, Scalar(0));
  std::vector<std::vector<ActionId>> action_of(n);
  std::vector<bool> maximizer(n);
  for (StateId s = 0; s < n; ++s) {
    maximizer[s] = arena.Controller(s) == player;
    if (game.terminal[s]) continue;
    for (ActionId a = 0; a < arena.NumActions(s); ++a) {
      if (!mask[s][a]) continue;
      MdpAction action;
      for (const Transition& t : arena.Next(s, a)) {
        action.next.emplace_back(t.target, t.prob);
      }
      action.reward = game.rewards[player][s][a];
      mdp.actions[s].push_back(std::move(action));
      action_of[s].push_back(a);
    }
  }
  TurnGameSolution solved = SolveTurnGame(mdp, maximizer);
  ZeroSumSolution out;
  out.table.player = player;
  out.table.state_values = std::move(solved.value);
  out.table.action_values = ActionValues(out.table, game);
  out.choice.assign(n, 0);
  for (StateId s = 0; s < n; ++s) {
    if (solved.policy[s] >= 0) out.choice[s] = action_of[s][solved.policy[s]];
  }
  return out;
}

OptStrategyPair SplitPositional(const Arena& arena, PlayerId player,
                                const std::vector<ActionId>& choice) {
  OptStrategyPair pair;
  pair.maximizer = PositionalStrategy(arena, player, choice);
  for (PlayerId j = 0; j < arena.NumPlayers(); ++j) {
    if (j != player) pair.minimizers.push_back(PositionalStrategy(arena, j, choice));
  }
  return pair;
}

std::pair<ValueTable, OptStrategyPair> SolveDiscounted(
    const Arena& arena, const std::vector<std::vector<Scalar>>& rewards,
    const Scalar& discount, PlayerId player) {
  RequireValidArena(arena);
  if (discount <= 0 || discount >= 1) {
    throw InputError("discount must lie in (0,1), got " + ToString(discount));
  }
  RewardGame game;
  game.arena = arena;
  game.discount = discount;
  game.rewards.assign(arena.NumPlayers(), ZeroRewards(arena));
  game.rewards[player] = rewards;
  game.terminal.assign(arena.NumStates(), false);
  ZeroSumSolution solved = SolveZeroSum(game, player, FullMask(arena));
  return {std::move(solved.table), SplitPositional(arena, player, solved.choice)};
}

FiniteHorizonSolution SolveFiniteHorizon(
    const Arena& arena,
    const std::vector<std::vector<std::vector<Scalar>>>& rewards, int horizon,
    PlayerId player) {
  RequireValidArena(arena);
  if (horizon < 1) throw InputError("horizon must be positive");
  const int n = arena.NumStates();
  FiniteHorizonSolution out;
  out.values.assign(horizon + 1, std::vector<Scalar>(n));
  out.action_values.resize(horizon + 1);
  std::vector<std::vector<ActionId>> choice(horizon + 1,
                                            std::vector<ActionId>(n, 0));
  for (StateId s = 0; s < n; ++s) {
    out.action_values[horizon].emplace_back(arena.NumActions(s), Scalar(0));
  }
  for (int t = horizon - 1; t >= 0; --t) {
    out.action_values[t].resize(n);
    for (StateId s = 0; s < n; ++s) {
      const bool max = arena.Controller(s) == player;
      for (ActionId a = 0; a < arena.NumActions(s); ++a) {
        Scalar q = rewards[t][s][a];
        for (const Transition& tr : arena.Next(s, a)) {
          q += tr.prob * out.values[t + 1][tr.target];
        }
        if (a == 0 || (max ? q > out.values[t][s] : q < out.values[t][s])) {
          out.values[t][s] = q;
          choice[t][s] = a;
        }
        out.action_values[t][s].push_back(std::move(q));
      }
    }
  }
  MemoryAutomaton clock;
  clock.size = horizon + 1;
  clock.initial = 0;
  clock.num_edges = arena.NumEdges();
  clock.next.resize(static_cast<size_t>(clock.size) * clock.num_edges);
  for (int t = 0; t <= horizon; ++t) {
    for (int e = 0; e < clock.num_edges; ++e) {
      clock.SetNext(t, e, std::min(t + 1, horizon));
    }
  }
  out.strategies.maximizer = {player, clock, choice};
  for (PlayerId j = 0; j < arena.NumPlayers(); ++j) {
    if (j != player) out.strategies.minimizers.push_back({j, clock, choice});
  }
  return out;
}

namespace {

// Outcome of the threshold game "payoff >= theta" inside one component.
struct Threshold {
  bool safety = false;  // true: Max wins outside `attractor` (Min's)
  std::vector<bool> in_attractor;
  std::vector<int> rank;
  bool MaxWins(int k) const { return safety != in_attractor[k]; }
};

}  // namespace

LimitGameSolution SolveLimitGame(const Arena& arena, PlayerId player,
                                 const std::vector<Scalar>& payoff) {
  if (!arena.IsDeterministic()) {
    throw InputError("limit games need a deterministic arena");
  }
  const int n = arena.NumStates();
  auto succ = [&](StateId s, ActionId a) { return arena.Next(s, a)[0].target; };
  std::vector<std::vector<int>> graph(n);
  for (StateId s = 0; s < n; ++s) {
    for (ActionId a = 0; a < arena.NumActions(s); ++a) {
      graph[s].push_back(succ(s, a));
    }
  }
  LimitGameSolution out;
  out.value.assign(n, Scalar(0));
  out.choice.assign(n, 0);
  std::vector<int> component_of(n, -1), local(n, -1);
  const auto components = StronglyConnectedComponents(graph);
  for (size_t c = 0; c < components.size(); ++c) {
    const auto& members = components[c];
    const int size = static_cast<int>(members.size());
    for (int k = 0; k < size; ++k) {
      component_of[members[k]] = static_cast<int>(c);
      local[members[k]] = k;
    }
    auto inside = [&](StateId y) {
      return component_of[y] == static_cast<int>(c);
    };
    bool cycle = size > 1;
    std::vector<Scalar> candidates;
    for (StateId x : members) {
      for (StateId y : graph[x]) {
        if (inside(y)) {
          cycle = true;
        } else {
          candidates.push_back(out.value[y]);
        }
      }
    }
    const Scalar& stay = payoff[members[0]];
    if (cycle) candidates.push_back(stay);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    auto solve = [&](const Scalar& theta) {
      Threshold th;
      th.safety = cycle && stay >= theta;
      th.in_attractor.assign(size, false);
      th.rank.assign(size, -1);
      // Safety: Min attracts to exits below theta. Reach: Max attracts to
      // exits at or above theta.
      auto target_exit = [&](StateId y) {
        return th.safety ? out.value[y] < theta : out.value[y] >= theta;
      };
      for (int round = 0;; ++round) {
        std::vector<int> added;
        for (int k = 0; k < size; ++k) {
          if (th.in_attractor[k]) continue;
          const StateId x = members[k];
          const bool attractor_owner =
              (arena.Controller(x) == player) != th.safety;
          bool any = false, all = true;
          for (StateId y : graph[x]) {
            const bool hit = inside(y) ? th.in_attractor[local[y]]
                                       : target_exit(y);
            any = any || hit;
            all = all && hit;
          }
          if (attractor_owner ? any : all) added.push_back(k);
        }
        if (added.empty()) break;
        for (int k : added) {
          th.in_attractor[k] = true;
          th.rank[k] = round;
        }
      }
      return th;
    };
    std::vector<Threshold> results;
    for (const Scalar& theta : candidates) results.push_back(solve(theta));

    for (int k = 0; k < size; ++k) {
      const StateId x = members[k];
      int level = -1;
      for (int t = 0; t < static_cast<int>(candidates.size()); ++t) {
        if (results[t].MaxWins(k)) level = t;
      }
      if (level < 0) throw InternalError("limit game without a winning level");
      out.value[x] = candidates[level];
      const int num_actions = arena.NumActions(x);
      // Does action a keep the play inside the attractor of `th`, moving
      // strictly closer to its target?
      auto closer = [&](const Threshold& th, const Scalar& theta, ActionId a) {
        const StateId y = succ(x, a);
        if (!inside(y)) {
          return th.safety ? out.value[y] < theta : out.value[y] >= theta;
        }
        return th.in_attractor[local[y]] && th.rank[local[y]] < th.rank[k];
      };
      auto stays_out = [&](const Threshold& th, const Scalar& theta,
                           ActionId a) {
        const StateId y = succ(x, a);
        if (!inside(y)) {
          return th.safety ? out.value[y] >= theta : out.value[y] < theta;
        }
        return !th.in_attractor[local[y]];
      };
      ActionId pick = -1;
      if (arena.Controller(x) == player) {
        const Threshold& th = results[level];
        for (ActionId a = 0; a < num_actions && pick < 0; ++a) {
          if (th.safety ? stays_out(th, candidates[level], a)
                        : closer(th, candidates[level], a)) {
            pick = a;
          }
        }
      } else if (level + 1 == static_cast<int>(candidates.size())) {
        pick = 0;
      } else {
        const Threshold& th = results[level + 1];
        for (ActionId a = 0; a < num_actions && pick < 0; ++a) {
          if (th.safety ? closer(th, candidates[level + 1], a)
                        : stays_out(th, candidates[level + 1], a)) {
            pick = a;
          }
        }
      }
      if (pick < 0) throw InternalError("limit game strategy extraction failed");
      out.choice[x] = pick;
    }
  }
  return out;
}

ReachedSetSolution SolveReachedSet(const Arena& arena,
                                   const ReachedSet& objective,
                                   PlayerId player) {
  RequireValidArena(arena);
  if (!arena.IsDeterministic()) {
    throw InputError("reached-set solving needs a deterministic arena");
  }
  std::vector<PayoffSpec> specs{objective};
  PayoffTracker tracker(arena, specs);
  ReachedSetSolution out;
  out.transducer = tracker.AsTransducer();
  out.product = BuildProduct(arena, out.transducer);
  std::vector<Scalar> payoff;
  for (MemoryKey key : out.product.memory) {
    payoff.push_back(tracker.LimitPayoff(0, key));
  }
  LimitGameSolution solved = SolveLimitGame(out.product.arena, player, payoff);
  out.table.player = player;
  out.table.state_values = std::move(solved.value);
  out.table.action_values = ActionValues(out.table, out.product.arena);
  out.choice = std::move(solved.choice);
  out.strategies.maximizer = LiftPositional(arena, out.product, out.transducer,
                                            player, out.choice);
  for (PlayerId j = 0; j < arena.NumPlayers(); ++j) {
    if (j == player) continue;
    out.strategies.minimizers.push_back(
        LiftPositional(arena, out.product, out.transducer, j, out.choice));
  }
  return out;
}

}  // namespace seceq
