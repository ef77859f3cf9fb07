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

#include "seceq/arena.h"

#include <set>
#include <utility>

#include "seceq/errors.h"

namespace seceq {

Arena::Arena(std::vector<std::string> player_names,
             std::vector<StateSpec> states, StateId initial)
    : player_names_(std::move(player_names)),
      states_(std::move(states)),
      initial_(initial) {
  edge_base_.resize(states_.size());
  for (size_t s = 0; s < states_.size(); ++s) {
    for (const ActionSpec& action : states_[s].actions) {
      edge_base_[s].push_back(num_edges_);
      num_edges_ += static_cast<int>(action.next.size());
    }
  }
}

bool Arena::IsDeterministic() const {
  for (const StateSpec& state : states_) {
    for (const ActionSpec& action : state.actions) {
      if (action.next.size() != 1) return false;
    }
  }
  return true;
}

Arena Arena::WithInitial(StateId s) const {
  return Arena(player_names_, states_, s);
}

ArenaBuilder::ArenaBuilder(int num_players) {
  for (int p = 0; p < num_players; ++p) {
    players_.push_back("p" + std::to_string(p + 1));
  }
}

StateId ArenaBuilder::AddState(PlayerId controller, std::string name) {
  StateId id = static_cast<StateId>(states_.size());
  if (name.empty()) name = "s" + std::to_string(id);
  states_.push_back(StateSpec{std::move(name), controller, {}});
  return id;
}

ActionId ArenaBuilder::AddAction(StateId s, Distribution next,
                                 std::string name) {
  auto& actions = states_.at(s).actions;
  ActionId id = static_cast<ActionId>(actions.size());
  if (name.empty()) name = "a" + std::to_string(id);
  actions.push_back(ActionSpec{std::move(name), std::move(next)});
  return id;
}

ActionId ArenaBuilder::AddMove(StateId s, StateId target, std::string name) {
  return AddAction(s, {Transition{target, Scalar(1)}}, std::move(name));
}

Arena ArenaBuilder::Build() const { return Arena(players_, states_, initial_); }

std::vector<std::string> ValidateArena(const Arena& arena) {
  std::vector<std::string> violations;
  if (arena.NumPlayers() < 1) violations.push_back("no players");
  if (arena.NumStates() == 0) {
    violations.push_back("no states");
    return violations;
  }
  if (arena.Initial() < 0 || arena.Initial() >= arena.NumStates()) {
    violations.push_back("initial state out of range");
  }
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    const std::string where = "state " + arena.StateName(s);
    PlayerId c = arena.Controller(s);
    if (c < 0 || c >= arena.NumPlayers()) {
      violations.push_back(where + ": controller out of range");
    }
    if (arena.NumActions(s) == 0) {
      violations.push_back(where + ": empty action set");
    }
    std::set<std::string> names;
    for (ActionId a = 0; a < arena.NumActions(s); ++a) {
      const std::string at = where + ", action " + arena.ActionName(s, a);
      if (!names.insert(arena.ActionName(s, a)).second) {
        violations.push_back(at + ": duplicate action name");
      }
      const Distribution& dist = arena.Next(s, a);
      if (dist.empty()) {
        violations.push_back(at + ": empty distribution");
        continue;
      }
      Scalar mass = 0;
      std::set<StateId> targets;
      for (const Transition& t : dist) {
        if (t.target < 0 || t.target >= arena.NumStates()) {
          violations.push_back(at + ": dangling transition target " +
                               std::to_string(t.target));
        } else if (!targets.insert(t.target).second) {
          violations.push_back(at + ": repeated successor " +
                               arena.StateName(t.target));
        }
        if (t.prob <= 0 || t.prob > 1) {
          violations.push_back(at + ": probability " + ToString(t.prob) +
                               " outside (0, 1]");
        }
        mass += t.prob;
      }
      if (mass != 1) {
        violations.push_back(at + ": distribution mass " + ToString(mass) +
                             " != 1");
      }
    }
  }
  return violations;
}

void RequireValidArena(const Arena& arena) {
  std::vector<std::string> violations = ValidateArena(arena);
  if (violations.empty()) return;
  std::string message = "invalid arena:";
  for (const std::string& v : violations) message += "\n  " + v;
  throw InputError(message);
}

}  // namespace seceq
