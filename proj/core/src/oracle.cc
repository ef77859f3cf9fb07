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

#include "seceq/oracle.h"

#include <algorithm>
#include <functional>
#include <map>

#include "seceq/errors.h"
#include "seceq/markov.h"

namespace seceq {

std::string StrategyClassName(StrategyClass c) {
  switch (c) {
    case StrategyClass::kPositionalArena:
      return "positional on the arena";
    case StrategyClass::kPositionalProduct:
      return "positional on the payoff-memory product";
    case StrategyClass::kTree:
      return "all strategies up to the horizon";
  }
  return "";
}

namespace {

// History tree of a finite-horizon game, cut at the horizon.
struct TreeNode {
  StateId state = 0;
  int depth = 0;
  std::vector<std::vector<int>> children;  // [a][k]; -1 at the horizon
  std::string history;
};

std::vector<TreeNode> BuildTree(const Arena& arena, int horizon) {
  std::vector<TreeNode> nodes;
  nodes.push_back({arena.Initial(), 0, {}, arena.StateName(arena.Initial())});
  for (size_t x = 0; x < nodes.size(); ++x) {
    const StateId s = nodes[x].state;
    const int depth = nodes[x].depth;
    std::vector<std::vector<int>> children(arena.NumActions(s));
    for (ActionId a = 0; a < arena.NumActions(s); ++a) {
      for (const Transition& t : arena.Next(s, a)) {
        if (depth + 1 >= horizon) {
          children[a].push_back(-1);
          continue;
        }
        children[a].push_back(static_cast<int>(nodes.size()));
        nodes.push_back({t.target, depth + 1, {},
                         nodes[x].history + " " + arena.ActionName(s, a) + " " +
                             arena.StateName(t.target)});
      }
    }
    nodes[x].children = std::move(children);
  }
  return nodes;
}

int MaxHorizon(std::span<const PayoffSpec> specs) {
  int horizon = 1;
  for (const PayoffSpec& spec : specs) {
    horizon = std::max(horizon, std::get<FiniteHorizon>(spec).horizon);
  }
  return horizon;
}

using Evaluator = std::function<std::vector<Scalar>(const std::vector<ActionId>&)>;

}  // namespace

OracleResult OracleEnumerate(const Arena& arena,
                             std::span<const PayoffSpec> specs,
                             const OracleBounds& bounds) {
  RequireValidArena(arena);
  ValidateSpecs(arena, specs);
  const int n = arena.NumPlayers();
  OracleResult result;
  std::vector<int> radix;
  std::vector<PlayerId> owner;
  Evaluator evaluate;

  if (AllOfFamily(specs, Family::kDiscounted)) {
    result.strategy_class = StrategyClass::kPositionalArena;
    for (StateId s = 0; s < arena.NumStates(); ++s) {
      result.points.push_back({s, arena.StateName(s)});
    }
    const Scalar beta = std::get<Discounted>(specs[0]).discount;
    evaluate = [&arena, specs, beta, n](const std::vector<ActionId>& choice) {
      // (I - beta P) v = r for each player, straight on the arena.
      const int size = arena.NumStates();
      std::vector<std::vector<Scalar>> a(size, std::vector<Scalar>(size));
      for (StateId s = 0; s < size; ++s) {
        a[s][s] += 1;
        for (const Transition& t : arena.Next(s, choice[s])) {
          a[s][t.target] -= beta * t.prob;
        }
      }
      std::vector<Scalar> u;
      for (PlayerId p = 0; p < n; ++p) {
        std::vector<Scalar> r;
        for (StateId s = 0; s < size; ++s) {
          r.push_back(std::get<Discounted>(specs[p]).rewards[s][choice[s]]);
        }
        u.push_back(SolveLinear(a, r)[arena.Initial()]);
      }
      return u;
    };
  } else if (AllOfFamily(specs, Family::kFiniteHorizon)) {
    result.strategy_class = StrategyClass::kTree;
    const int horizon = MaxHorizon(specs);
    auto tree = std::make_shared<std::vector<TreeNode>>(BuildTree(arena, horizon));
    for (const TreeNode& node : *tree) {
      result.points.push_back({node.state, node.history});
    }
    evaluate = [&arena, specs, tree, n](const std::vector<ActionId>& choice) {
      std::function<std::vector<Scalar>(int)> value = [&](int x) {
        std::vector<Scalar> u(n, Scalar(0));
        if (x < 0) return u;
        const TreeNode& node = (*tree)[x];
        const ActionId a = choice[x];
        for (PlayerId p = 0; p < n; ++p) {
          const auto& fh = std::get<FiniteHorizon>(specs[p]);
          if (node.depth < fh.horizon) u[p] += fh.rewards[node.depth][node.state][a];
        }
        const Distribution& dist = arena.Next(node.state, a);
        for (size_t k = 0; k < dist.size(); ++k) {
          std::vector<Scalar> v = value(node.children[a][k]);
          for (PlayerId p = 0; p < n; ++p) u[p] += dist[k].prob * v[p];
        }
        return u;
      };
      return value(0);
    };
  } else if (AllFiniteRange(specs) && arena.IsDeterministic()) {
    result.strategy_class = StrategyClass::kPositionalProduct;
    PayoffTracker tracker(arena, specs);
    auto product = std::make_shared<ProductArena>(
        BuildProduct(arena, tracker.AsTransducer()));
    for (StateId x = 0; x < product->NumStates(); ++x) {
      result.points.push_back({product->base_state[x],
                               product->arena.StateName(x)});
    }
    evaluate = [&arena, specs, product, n](const std::vector<ActionId>& choice) {
      // Follow the play on the product, then score its projection.
      std::map<StateId, size_t> seen;
      std::vector<Step> steps;
      StateId x = 0;
      while (seen.find(x) == seen.end()) {
        seen.emplace(x, steps.size());
        steps.push_back({product->base_state[x], choice[x]});
        x = product->arena.Next(x, choice[x])[0].target;
      }
      Lasso lasso;
      lasso.prefix.assign(steps.begin(), steps.begin() + seen.at(x));
      lasso.cycle.assign(steps.begin() + seen.at(x), steps.end());
      std::vector<Scalar> u;
      for (PlayerId p = 0; p < n; ++p) {
        u.push_back(EvaluateOnLasso(arena, specs[p], lasso));
      }
      return u;
    };
  } else {
    throw UnsupportedError("oracle: unsupported payoff combination");
  }

  long count = 1;
  for (const DecisionPoint& point : result.points) {
    radix.push_back(arena.NumActions(point.state));
    owner.push_back(arena.Controller(point.state));
    count *= radix.back();
    if (count > bounds.max_profiles) {
      throw InputError("oracle: more than " + std::to_string(bounds.max_profiles) +
                       " profiles");
    }
  }
  result.num_profiles = count;
  const int points = static_cast<int>(radix.size());
  std::vector<long> weight(points, 1);
  for (int k = 1; k < points; ++k) weight[k] = weight[k - 1] * radix[k - 1];
  auto decode = [&](long index) {
    std::vector<ActionId> d(points);
    for (int k = 0; k < points; ++k) {
      d[k] = static_cast<ActionId>(index % radix[k]);
      index /= radix[k];
    }
    return d;
  };
  std::vector<std::vector<Scalar>> table(count);
  for (long index = 0; index < count; ++index) table[index] = evaluate(decode(index));

  std::vector<std::vector<int>> own_points(n);
  for (int k = 0; k < points; ++k) own_points[owner[k]].push_back(k);

  for (long index = 0; index < count; ++index) {
    const std::vector<Scalar>& u = table[index];
    const std::vector<ActionId> digits = decode(index);
    bool nash = true, secure = true, sum_secure = true, strong = true;
    for (PlayerId i = 0; i < n; ++i) {
      const auto& mine = own_points[i];
      long base = index;
      for (int k : mine) base -= digits[k] * weight[k];
      std::vector<ActionId> pick(mine.size(), 0);
      Scalar reference_sum = 0;
      for (PlayerId j = 0; j < n; ++j) {
        if (j != i) reference_sum += u[j];
      }
      while (true) {
        long other = base;
        for (size_t t = 0; t < mine.size(); ++t) other += pick[t] * weight[mine[t]];
        const std::vector<Scalar>& v = table[other];
        if (v[i] > u[i]) nash = false;
        if (v[i] == u[i]) {
          Scalar sum = 0;
          bool all_weakly_worse = true, some_strictly = false;
          for (PlayerId j = 0; j < n; ++j) {
            if (j == i) continue;
            sum += v[j];
            if (v[j] < u[j]) {
              strong = false;
              some_strictly = true;
            }
            if (v[j] > u[j]) all_weakly_worse = false;
          }
          if (sum < reference_sum) sum_secure = false;
          if (all_weakly_worse && some_strictly) secure = false;
        }
        size_t t = 0;
        while (t < mine.size() && ++pick[t] == radix[mine[t]]) pick[t++] = 0;
        if (t == mine.size()) break;
      }
    }
    secure = secure && nash;
    sum_secure = sum_secure && nash;
    strong = strong && nash;
    if (nash) ++result.num_nash;
    if ((strong && !sum_secure) || (sum_secure && !secure) ||
        (n == 2 && secure != strong)) {
      ++result.hierarchy_violations;
    }
    if (secure) {
      result.secure.push_back({index, digits, u, nash, secure, sum_secure, strong});
    }
  }
  return result;
}

long TreeProfileIndex(const Arena& arena, std::span<const PayoffSpec> specs,
                      const StrategyProfile& profile) {
  if (!AllOfFamily(specs, Family::kFiniteHorizon)) {
    throw UnsupportedError("tree index needs finite-horizon payoffs");
  }
  const std::vector<TreeNode> tree = BuildTree(arena, MaxHorizon(specs));
  std::vector<int> radix;
  for (const TreeNode& node : tree) radix.push_back(arena.NumActions(node.state));
  long index = 0, weight = 1;
  std::vector<int> memory(tree.size(), -1);
  memory[0] = profile.memory.initial;
  std::vector<ActionId> decision(tree.size(), 0);
  // Parents precede children, so one forward pass carries the memory.
  for (size_t x = 0; x < tree.size(); ++x) {
    const StateId s = tree[x].state;
    decision[x] = profile.Choose(memory[x], s);
    for (ActionId a = 0; a < arena.NumActions(s); ++a) {
      for (size_t k = 0; k < tree[x].children[a].size(); ++k) {
        const int child = tree[x].children[a][k];
        if (child >= 0) {
          memory[child] =
              profile.memory.Next(arena, memory[x], s, a, static_cast<int>(k));
        }
      }
    }
  }
  for (size_t x = 0; x < tree.size(); ++x) {
    index += decision[x] * weight;
    weight *= radix[x];
  }
  return index;
}

bool OracleContains(const OracleResult& result, const Arena& arena,
                    std::span<const PayoffSpec> specs,
                    const StrategyProfile& profile) {
  const long index = TreeProfileIndex(arena, specs, profile);
  return std::binary_search(
      result.secure.begin(), result.secure.end(), index,
      [](const auto& a, const auto& b) {
        if constexpr (std::is_same_v<std::decay_t<decltype(a)>, long>) {
          return a < b.index;
        } else {
          return a.index < b;
        }
      });
}

}  // namespace seceq
