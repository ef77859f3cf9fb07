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

#ifndef SECEQ_MARKOV_H_
#define SECEQ_MARKOV_H_

#include <span>
#include <utility>
#include <vector>

#include "seceq/scalar.h"

namespace seceq {

using Successors = std::vector<std::pair<int, Scalar>>;

// Solves a x = b exactly. Throws InternalError if a is singular.
std::vector<Scalar> SolveLinear(std::vector<std::vector<Scalar>> a,
                                std::vector<Scalar> b);

// Strongly connected components in reverse topological order (every edge
// leaves a component towards one listed earlier).
std::vector<std::vector<int>> StronglyConnectedComponents(
    const std::vector<std::vector<int>>& graph);

// Markov reward chain. A node without successors is terminal and worth
// fixed[x]. Otherwise v(x) = reward[x] + discount * sum p * v(y).
// With discount 1, closed classes are worth their fixed value (they must
// carry zero reward and a constant fixed value); every other node must be
// transient.
struct Chain {
  std::vector<Successors> next;
  std::vector<Scalar> reward;
  std::vector<Scalar> fixed;
  Scalar discount = 1;
};

std::vector<Scalar> SolveChain(const Chain& chain);

struct MdpAction {
  Successors next;
  Scalar reward;
};

// Single-controller decision process with the same conventions as Chain.
// With discount 1 the graph must be acyclic outside terminal nodes.
struct Mdp {
  std::vector<std::vector<MdpAction>> actions;
  std::vector<Scalar> fixed;
  Scalar discount = 1;

  int size() const { return static_cast<int>(actions.size()); }
};

enum class Sense { kMax, kMin };

struct MdpSolution {
  std::vector<Scalar> value;
  // Index into actions[x]; the smallest optimal one. -1 at terminal nodes.
  std::vector<int> policy;
};

Scalar QValue(const Mdp& mdp, const std::vector<Scalar>& value, int x, int k);
std::vector<Scalar> EvaluatePolicy(const Mdp& mdp, std::span<const int> policy);
// Policy iteration, exact.
MdpSolution SolveMdp(const Mdp& mdp, Sense sense);

// Indices of actions attaining value[x] (exactly) at x.
std::vector<int> OptimalChoices(const Mdp& mdp, const std::vector<Scalar>& value,
                                int x);

// Two-sided turn-based version: maximizer[x] tells who picks at x.
struct TurnGameSolution {
  std::vector<Scalar> value;
  std::vector<int> policy;
};

TurnGameSolution SolveTurnGame(const Mdp& game,
                               const std::vector<bool>& maximizer);

}  // namespace seceq

#endif  // SECEQ_MARKOV_H_
