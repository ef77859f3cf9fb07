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

#include "seceq/strategy.h"

#include <deque>
#include <map>
#include <string>
#include <utility>

#include "seceq/errors.h"

namespace seceq {
namespace {

void CheckTables(const Arena& arena, const MemoryAutomaton& memory,
                 const std::vector<std::vector<ActionId>>& choice,
                 const std::string& what) {
  if (memory.size < 1 || memory.initial < 0 || memory.initial >= memory.size) {
    throw InputError(what + ": bad memory size or initial memory");
  }
  if (memory.num_edges != arena.NumEdges() ||
      memory.next.size() !=
          static_cast<size_t>(memory.size) * arena.NumEdges()) {
    throw InputError(what + ": memory update table does not match the arena");
  }
  for (int m : memory.next) {
    if (m < 0 || m >= memory.size) {
      throw InputError(what + ": memory update out of range");
    }
  }
  if (static_cast<int>(choice.size()) != memory.size) {
    throw InputError(what + ": choice table needs one row per memory state");
  }
  for (const auto& row : choice) {
    if (static_cast<int>(row.size()) != arena.NumStates()) {
      throw InputError(what + ": choice row needs one entry per state");
    }
    for (StateId s = 0; s < arena.NumStates(); ++s) {
      if (row[s] < 0 || row[s] >= arena.NumActions(s)) {
        throw InputError(what + ": choice out of range at state " +
                         arena.StateName(s));
      }
    }
  }
}

}  // namespace

MemoryAutomaton MemoryAutomaton::Identity(const Arena& arena, int size,
                                          int initial) {
  MemoryAutomaton memory;
  memory.size = size;
  memory.initial = initial;
  memory.num_edges = arena.NumEdges();
  memory.next.resize(static_cast<size_t>(size) * arena.NumEdges());
  for (int m = 0; m < size; ++m) {
    for (int e = 0; e < arena.NumEdges(); ++e) memory.SetNext(m, e, m);
  }
  return memory;
}

StrategyProfile PositionalProfile(const Arena& arena,
                                  std::vector<ActionId> choice) {
  StrategyProfile profile;
  profile.memory = MemoryAutomaton::Identity(arena, 1, 0);
  profile.choice.push_back(std::move(choice));
  return profile;
}

FiniteMemoryStrategy PositionalStrategy(const Arena& arena, PlayerId owner,
                                        std::vector<ActionId> choice) {
  FiniteMemoryStrategy strategy;
  strategy.owner = owner;
  strategy.memory = MemoryAutomaton::Identity(arena, 1, 0);
  strategy.choice.push_back(std::move(choice));
  return strategy;
}

FiniteMemoryStrategy StrategyOf(const StrategyProfile& profile,
                                PlayerId owner) {
  return FiniteMemoryStrategy{owner, profile.memory, profile.choice};
}

StrategyProfile CombineStrategies(
    const Arena& arena, std::span<const FiniteMemoryStrategy> parts) {
  if (static_cast<int>(parts.size()) != arena.NumPlayers()) {
    throw InputError("one strategy per player expected");
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].owner != static_cast<PlayerId>(i)) {
      throw InputError("strategies must be ordered by owner");
    }
  }
  using Tuple = std::vector<int>;
  std::map<Tuple, int> ids;
  std::vector<Tuple> tuples;
  auto intern = [&](const Tuple& t) {
    auto [it, inserted] = ids.emplace(t, static_cast<int>(tuples.size()));
    if (inserted) tuples.push_back(t);
    return it->second;
  };
  Tuple start;
  for (const auto& part : parts) start.push_back(part.memory.initial);
  intern(start);

  // Closure over memory tuples under every edge; the updates are total, so
  // this is finite and never larger than the product of the sizes.
  std::vector<std::vector<int>> next_rows;
  for (size_t id = 0; id < tuples.size(); ++id) {
    std::vector<int> row(arena.NumEdges());
    for (int e = 0; e < arena.NumEdges(); ++e) {
      Tuple t = tuples[id];
      for (size_t i = 0; i < parts.size(); ++i) {
        t[i] = parts[i].memory.Next(t[i], e);
      }
      row[e] = intern(t);
    }
    next_rows.push_back(std::move(row));
  }

  StrategyProfile profile;
  profile.memory.size = static_cast<int>(tuples.size());
  profile.memory.initial = 0;
  profile.memory.num_edges = arena.NumEdges();
  for (const auto& row : next_rows) {
    profile.memory.next.insert(profile.memory.next.end(), row.begin(),
                               row.end());
  }
  profile.choice.resize(tuples.size());
  for (size_t id = 0; id < tuples.size(); ++id) {
    profile.choice[id].resize(arena.NumStates());
    for (StateId s = 0; s < arena.NumStates(); ++s) {
      PlayerId c = arena.Controller(s);
      profile.choice[id][s] = parts[c].Choose(tuples[id][c], s);
    }
  }
  return profile;
}

StrategyProfile WithDeviation(const Arena& arena,
                              const StrategyProfile& profile,
                              const FiniteMemoryStrategy& deviation) {
  const PlayerId owner = deviation.owner;
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](std::pair<int, int> p) {
    auto [it, inserted] = ids.emplace(p, static_cast<int>(pairs.size()));
    if (inserted) pairs.push_back(p);
    return it->second;
  };
  auto choose = [&](const std::pair<int, int>& p, StateId s) {
    return arena.Controller(s) == owner ? deviation.Choose(p.second, s)
                                        : profile.Choose(p.first, s);
  };

  struct Visit {
    StateId state;
    int memory;
  };
  std::map<std::pair<StateId, int>, bool> seen;
  std::map<std::pair<int, int>, int> known_next;  // (memory, edge) -> memory
  std::deque<Visit> queue;
  int start = intern({profile.memory.initial, deviation.memory.initial});
  queue.push_back({arena.Initial(), start});
  seen[{arena.Initial(), start}] = true;
  while (!queue.empty()) {
    Visit v = queue.front();
    queue.pop_front();
    auto p = pairs[v.memory];
    ActionId a = choose(p, v.state);
    const Distribution& dist = arena.Next(v.state, a);
    for (size_t k = 0; k < dist.size(); ++k) {
      int edge = arena.EdgeIndex(v.state, a, static_cast<int>(k));
      int m = intern({profile.memory.Next(p.first, edge),
                      deviation.memory.Next(p.second, edge)});
      known_next[{v.memory, edge}] = m;
      if (!seen[{dist[k].target, m}]) {
        seen[{dist[k].target, m}] = true;
        queue.push_back({dist[k].target, m});
      }
    }
  }

  const int sink = static_cast<int>(pairs.size());
  StrategyProfile out;
  out.memory.size = sink + 1;
  out.memory.initial = start;
  out.memory.num_edges = arena.NumEdges();
  out.memory.next.assign(static_cast<size_t>(out.memory.size) * arena.NumEdges(),
                         sink);
  for (const auto& [key, m] : known_next) out.memory.SetNext(key.first, key.second, m);
  out.choice.assign(out.memory.size, std::vector<ActionId>(arena.NumStates(), 0));
  for (int m = 0; m < sink; ++m) {
    for (StateId s = 0; s < arena.NumStates(); ++s) {
      out.choice[m][s] = choose(pairs[m], s);
    }
  }
  return out;
}

void ValidateProfile(const Arena& arena, const StrategyProfile& profile) {
  CheckTables(arena, profile.memory, profile.choice, "profile");
}

void ValidateStrategy(const Arena& arena,
                      const FiniteMemoryStrategy& strategy) {
  if (strategy.owner < 0 || strategy.owner >= arena.NumPlayers()) {
    throw InputError("strategy: owner out of range");
  }
  CheckTables(arena, strategy.memory, strategy.choice, "strategy");
}

}  // namespace seceq
