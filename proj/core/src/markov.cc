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

#include "seceq/markov.h"

#include <algorithm>
#include <string>

#include "seceq/errors.h"

namespace seceq {

std::vector<Scalar> SolveLinear(std::vector<std::vector<Scalar>> a,
                                std::vector<Scalar> b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) throw InternalError("singular linear system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Scalar inv = 1 / a[col][col];
    for (size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (size_t row = 0; row < n; ++row) {
      if (row == col || sgn(a[row][col]) == 0) continue;
      const Scalar factor = a[row][col];
      for (size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
      b[row] -= factor * b[col];
    }
  }
  return b;
}

std::vector<std::vector<int>> StronglyConnectedComponents(
    const std::vector<std::vector<int>>& graph) {
  const int n = static_cast<int>(graph.size());
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;
  // Explicit call stack of (node, next child position).
  std::vector<std::pair<int, size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [x, pos] = frames.back();
      if (pos < graph[x].size()) {
        int y = graph[x][pos++];
        if (index[y] < 0) {
          index[y] = low[y] = counter++;
          stack.push_back(y);
          on_stack[y] = true;
          frames.emplace_back(y, 0);
        } else if (on_stack[y]) {
          low[x] = std::min(low[x], index[y]);
        }
        continue;
      }
      const int done = x;
      frames.pop_back();
      if (!frames.empty()) {
        int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<int> component;
        int y;
        do {
          y = stack.back();
          stack.pop_back();
          on_stack[y] = false;
          component.push_back(y);
        } while (y != done);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
    }
  }
  return components;
}

std::vector<Scalar> SolveChain(const Chain& chain) {
  const int n = static_cast<int>(chain.next.size());
  std::vector<std::vector<int>> graph(n);
  for (int x = 0; x < n; ++x) {
    for (const auto& [y, p] : chain.next[x]) graph[x].push_back(y);
  }
  std::vector<Scalar> value(n);
  std::vector<int> component_of(n, -1), local(n, -1);
  const auto components = StronglyConnectedComponents(graph);
  const bool undiscounted = chain.discount == 1;
  for (size_t c = 0; c < components.size(); ++c) {
    const auto& members = components[c];
    for (size_t k = 0; k < members.size(); ++k) {
      component_of[members[k]] = static_cast<int>(c);
      local[members[k]] = static_cast<int>(k);
    }
    if (members.size() == 1 && chain.next[members[0]].empty()) {
      value[members[0]] = chain.fixed[members[0]];
      continue;
    }
    bool closed = true;
    for (int x : members) {
      for (int y : graph[x]) closed = closed && component_of[y] == static_cast<int>(c);
    }
    if (closed && undiscounted) {
      for (int x : members) value[x] = chain.fixed[x];
      continue;
    }
    const size_t m = members.size();
    std::vector<std::vector<Scalar>> a(m, std::vector<Scalar>(m));
    std::vector<Scalar> b(m);
    for (size_t k = 0; k < m; ++k) {
      const int x = members[k];
      a[k][k] += 1;
      b[k] = chain.reward[x];
      for (const auto& [y, p] : chain.next[x]) {
        if (component_of[y] == static_cast<int>(c)) {
          a[k][local[y]] -= chain.discount * p;
        } else {
          b[k] += chain.discount * p * value[y];
        }
      }
    }
    std::vector<Scalar> solved =
        m == 1 ? std::vector<Scalar>{b[0] / a[0][0]} : SolveLinear(a, b);
    for (size_t k = 0; k < m; ++k) value[members[k]] = solved[k];
  }
  return value;
}

Scalar QValue(const Mdp& mdp, const std::vector<Scalar>& value, int x, int k) {
  const MdpAction& action = mdp.actions[x][k];
  Scalar expected = 0;
  for (const auto& [y, p] : action.next) expected += p * value[y];
  return action.reward + mdp.discount * expected;
}

std::vector<Scalar> EvaluatePolicy(const Mdp& mdp,
                                   std::span<const int> policy) {
  Chain chain;
  const int n = mdp.size();
  chain.next.resize(n);
  chain.reward.assign(n, Scalar(0));
  chain.fixed = mdp.fixed;
  chain.discount = mdp.discount;
  for (int x = 0; x < n; ++x) {
    if (mdp.actions[x].empty()) continue;
    const MdpAction& action = mdp.actions[x][policy[x]];
    chain.next[x] = action.next;
    chain.reward[x] = action.reward;
  }
  return SolveChain(chain);
}

std::vector<int> OptimalChoices(const Mdp& mdp,
                                const std::vector<Scalar>& value, int x) {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(mdp.actions[x].size()); ++k) {
    if (QValue(mdp, value, x, k) == value[x]) out.push_back(k);
  }
  return out;
}

namespace {

bool Better(Sense sense, const Scalar& a, const Scalar& b) {
  return sense == Sense::kMax ? a > b : a < b;
}

// Smallest index of an action with the best Q-value, and that value.
std::pair<int, Scalar> BestChoice(const Mdp& mdp,
                                  const std::vector<Scalar>& value, int x,
                                  Sense sense) {
  int best = 0;
  Scalar best_q = QValue(mdp, value, x, 0);
  for (int k = 1; k < static_cast<int>(mdp.actions[x].size()); ++k) {
    Scalar q = QValue(mdp, value, x, k);
    if (Better(sense, q, best_q)) {
      best = k;
      best_q = std::move(q);
    }
  }
  return {best, best_q};
}

std::vector<int> InitialPolicy(const Mdp& mdp) {
  std::vector<int> policy(mdp.size(), 0);
  for (int x = 0; x < mdp.size(); ++x) {
    if (mdp.actions[x].empty()) policy[x] = -1;
  }
  return policy;
}

}  // namespace

MdpSolution SolveMdp(const Mdp& mdp, Sense sense) {
  std::vector<int> policy = InitialPolicy(mdp);
  std::vector<Scalar> value;
  while (true) {
    value = EvaluatePolicy(mdp, policy);
    bool changed = false;
    for (int x = 0; x < mdp.size(); ++x) {
      if (mdp.actions[x].empty()) continue;
      auto [best, best_q] = BestChoice(mdp, value, x, sense);
      if (Better(sense, best_q, value[x])) {
        policy[x] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (int x = 0; x < mdp.size(); ++x) {
    if (!mdp.actions[x].empty()) policy[x] = BestChoice(mdp, value, x, sense).first;
  }
  return {std::move(value), std::move(policy)};
}

TurnGameSolution SolveTurnGame(const Mdp& game,
                               const std::vector<bool>& maximizer) {
  const int n = game.size();
  std::vector<int> sigma = InitialPolicy(game);
  std::vector<Scalar> value;
  while (true) {
    // Minimizer's best response to sigma.
    Mdp restricted = game;
    for (int x = 0; x < n; ++x) {
      if (maximizer[x] && !game.actions[x].empty()) {
        restricted.actions[x] = {game.actions[x][sigma[x]]};
      }
    }
    value = SolveMdp(restricted, Sense::kMin).value;
    bool changed = false;
    for (int x = 0; x < n; ++x) {
      if (!maximizer[x] || game.actions[x].empty()) continue;
      auto [best, best_q] = BestChoice(game, value, x, Sense::kMax);
      if (best_q > value[x]) {
        sigma[x] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  TurnGameSolution solution{std::move(value), std::vector<int>(n, -1)};
  for (int x = 0; x < n; ++x) {
    if (game.actions[x].empty()) continue;
    solution.policy[x] =
        BestChoice(game, solution.value, x,
                   maximizer[x] ? Sense::kMax : Sense::kMin)
            .first;
  }
  return solution;
}

}  // namespace seceq
