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

#ifndef SECEQ_ARENA_H_
#define SECEQ_ARENA_H_

#include <string>
#include <vector>

#include "seceq/scalar.h"

namespace seceq {

using PlayerId = int;
using StateId = int;
using ActionId = int;

struct Transition {
  StateId target = 0;
  Scalar prob;
};

// Successor distribution q(s, a). Entries keep their input order; successor
// index k always refers to the k-th entry.
using Distribution = std::vector<Transition>;

struct ActionSpec {
  std::string name;
  Distribution next;
};

struct StateSpec {
  std::string name;
  PlayerId controller = 0;
  std::vector<ActionSpec> actions;
};

// A finite turn-based game graph. Each state belongs to one controlling
// player who picks one of the state's actions; the successor is drawn from
// the action's distribution.
//
// The constructor accepts malformed data so that ValidateArena can report
// it; every solver calls RequireValidArena first.
class Arena {
 public:
  Arena() = default;
  Arena(std::vector<std::string> player_names, std::vector<StateSpec> states,
        StateId initial);

  int NumPlayers() const { return static_cast<int>(player_names_.size()); }
  int NumStates() const { return static_cast<int>(states_.size()); }
  StateId Initial() const { return initial_; }

  PlayerId Controller(StateId s) const { return states_[s].controller; }
  int NumActions(StateId s) const {
    return static_cast<int>(states_[s].actions.size());
  }
  const Distribution& Next(StateId s, ActionId a) const {
    return states_[s].actions[a].next;
  }

  const std::string& PlayerName(PlayerId p) const { return player_names_[p]; }
  const std::string& StateName(StateId s) const { return states_[s].name; }
  const std::string& ActionName(StateId s, ActionId a) const {
    return states_[s].actions[a].name;
  }
  const std::vector<std::string>& PlayerNames() const { return player_names_; }
  const std::vector<StateSpec>& States() const { return states_; }

  // Edges are the (state, action, successor index) triples, numbered densely.
  // Memory automata store their update tables in this order.
  int NumEdges() const { return num_edges_; }
  int EdgeIndex(StateId s, ActionId a, int k) const {
    return edge_base_[s][a] + k;
  }

  // True iff every distribution is a single point mass.
  bool IsDeterministic() const;

  // Same graph, different initial state. Used to look at subgames.
  Arena WithInitial(StateId s) const;

 private:
  std::vector<std::string> player_names_;
  std::vector<StateSpec> states_;
  StateId initial_ = 0;
  std::vector<std::vector<int>> edge_base_;
  int num_edges_ = 0;
};

// Incremental construction helper. Player and state names default to
// "p<i>" and "s<i>".
class ArenaBuilder {
 public:
  explicit ArenaBuilder(int num_players);

  StateId AddState(PlayerId controller, std::string name = "");
  ActionId AddAction(StateId s, Distribution next, std::string name = "");
  // Point-mass shorthand.
  ActionId AddMove(StateId s, StateId target, std::string name = "");
  void SetInitial(StateId s) { initial_ = s; }

  Arena Build() const;

 private:
  std::vector<std::string> players_;
  std::vector<StateSpec> states_;
  StateId initial_ = 0;
};

// Returns the list of violations; empty means the arena is well formed.
std::vector<std::string> ValidateArena(const Arena& arena);

// Throws InputError listing the violations, if any.
void RequireValidArena(const Arena& arena);

}  // namespace seceq

#endif  // SECEQ_ARENA_H_
