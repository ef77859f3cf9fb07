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

#include "seceq/game_io.h"

#include <fstream>
#include <map>
#include <sstream>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

#include "seceq/errors.h"

namespace seceq {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& Member(const Json& object, const std::string& key,
                   const std::string& where) {
  if (!object.is_object()) Fail(where, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) Fail(where, "missing \"" + key + "\"");
  return *it;
}

std::string String(const Json& value, const std::string& where) {
  if (!value.is_string()) Fail(where, "expected a string");
  return value.get<std::string>();
}

long Integer(const Json& value, const std::string& where) {
  if (!value.is_number_integer()) Fail(where, "expected an integer");
  return value.get<long>();
}

Scalar Rational(const Json& value, const std::string& where) {
  if (value.is_number_integer()) return Scalar(value.get<long>());
  if (!value.is_string()) Fail(where, "expected a rational \"n/d\"");
  try {
    return ParseScalar(value.get<std::string>());
  } catch (const InputError& e) {
    Fail(where, e.what());
  }
}

std::string Text(const Scalar& value) { return ToString(value); }

// Name tables for the document being read.
struct Names {
  std::map<std::string, PlayerId> players;
  std::map<std::string, StateId> states;
  std::vector<std::map<std::string, ActionId>> actions;

  StateId State(const Json& value, const std::string& where) const {
    std::string name = String(value, where);
    auto it = states.find(name);
    if (it == states.end()) Fail(where, "unknown state \"" + name + "\"");
    return it->second;
  }
  ActionId Action(StateId s, const Json& value, const std::string& where) const {
    std::string name = String(value, where);
    auto it = actions[s].find(name);
    if (it == actions[s].end()) Fail(where, "unknown action \"" + name + "\"");
    return it->second;
  }
};

std::vector<std::vector<Scalar>> RewardTable(const Arena& arena,
                                             const Names& names,
                                             const Json& table,
                                             const std::string& where) {
  std::vector<std::vector<Scalar>> rewards = ZeroRewards(arena);
  if (!table.is_object()) Fail(where, "expected an object of states");
  for (const auto& [state, row] : table.items()) {
    const std::string here = where + "." + state;
    StateId s = names.State(Json(state), here);
    if (!row.is_object()) Fail(here, "expected an object of actions");
    for (const auto& [action, value] : row.items()) {
      rewards[s][names.Action(s, Json(action), here)] =
          Rational(value, here + "." + action);
    }
  }
  return rewards;
}

std::vector<StateId> StateList(const Names& names, const Json& list,
                               const std::string& where) {
  if (!list.is_array()) Fail(where, "expected a list of states");
  std::vector<StateId> out;
  for (const Json& item : list) out.push_back(names.State(item, where));
  return out;
}

std::vector<Scalar> ScalarList(const Json& list, const std::string& where) {
  if (!list.is_array()) Fail(where, "expected a list of rationals");
  std::vector<Scalar> out;
  for (const Json& item : list) out.push_back(Rational(item, where));
  return out;
}

PayoffSpec ParsePayoff(const Arena& arena, const Names& names, const Json& j,
                       const std::string& where) {
  const std::string family = String(Member(j, "family", where), where + ".family");
  if (family == "discounted") {
    Discounted d;
    d.discount = Rational(Member(j, "discount", where), where + ".discount");
    d.rewards = j.contains("rewards")
                    ? RewardTable(arena, names, j["rewards"], where + ".rewards")
                    : ZeroRewards(arena);
    return d;
  }
  if (family == "finite_horizon") {
    FiniteHorizon f;
    f.horizon = static_cast<int>(Integer(Member(j, "horizon", where), where + ".horizon"));
    if (f.horizon < 1) Fail(where + ".horizon", "must be positive");
    f.rewards.assign(f.horizon, ZeroRewards(arena));
    if (j.contains("rewards")) {
      const Json& periods = j["rewards"];
      if (!periods.is_array() || static_cast<int>(periods.size()) > f.horizon) {
        Fail(where + ".rewards", "expected at most `horizon` periods");
      }
      for (size_t t = 0; t < periods.size(); ++t) {
        f.rewards[t] = RewardTable(arena, names, periods[t],
                                   where + ".rewards[" + std::to_string(t) + "]");
      }
    }
    return f;
  }
  if (family == "reached_set") {
    ReachedSet r;
    const Json& targets = Member(j, "targets", where);
    if (!targets.is_array()) Fail(where + ".targets", "expected a list");
    for (const Json& t : targets) r.targets.push_back(StateList(names, t, where + ".targets"));
    r.values = ScalarList(Member(j, "values", where), where + ".values");
    return r;
  }
  if (family == "capped_hitting") {
    CappedHitting c;
    c.target = StateList(names, Member(j, "target", where), where + ".target");
    c.cap = j.contains("cap") ? static_cast<int>(Integer(j["cap"], where + ".cap"))
                              : DefaultHittingCap(arena);
    c.values = ScalarList(Member(j, "values", where), where + ".values");
    c.unreached = Rational(Member(j, "unreached", where), where + ".unreached");
    return c;
  }
  Fail(where + ".family", "unknown family \"" + family + "\"");
}

StrategyProfile ParseProfile(const Arena& arena, const Names& names,
                             const Json& j) {
  const std::string where = "profile";
  const Json& memory = Member(j, "memory", where);
  StrategyProfile profile;
  profile.memory.size = static_cast<int>(Integer(Member(memory, "size", where), where + ".memory.size"));
  profile.memory.initial = static_cast<int>(Integer(Member(memory, "initial", where), where + ".memory.initial"));
  profile.memory.num_edges = arena.NumEdges();
  if (profile.memory.size < 1) Fail(where + ".memory.size", "must be positive");
  const Json& next = Member(memory, "next", where + ".memory");
  if (!next.is_array() || static_cast<int>(next.size()) != profile.memory.size) {
    Fail(where + ".memory.next", "expected one list per memory state");
  }
  for (const Json& row : next) {
    if (!row.is_array() || static_cast<int>(row.size()) != arena.NumEdges()) {
      Fail(where + ".memory.next",
           "expected " + std::to_string(arena.NumEdges()) + " entries per memory state");
    }
    for (const Json& target : row) {
      profile.memory.next.push_back(static_cast<int>(Integer(target, where + ".memory.next")));
    }
  }
  const Json& choice = Member(j, "choice", where);
  if (!choice.is_array() || static_cast<int>(choice.size()) != profile.memory.size) {
    Fail(where + ".choice", "expected one object per memory state");
  }
  for (const Json& row : choice) {
    std::vector<ActionId> actions(arena.NumStates(), 0);
    if (!row.is_object()) Fail(where + ".choice", "expected an object of states");
    for (const auto& [state, action] : row.items()) {
      StateId s = names.State(Json(state), where + ".choice");
      actions[s] = names.Action(s, action, where + ".choice." + state);
    }
    profile.choice.push_back(std::move(actions));
  }
  ValidateProfile(arena, profile);
  return profile;
}

std::pair<int, int> LineColumn(std::string_view text, size_t offset) {
  int line = 1, column = 1;
  for (size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Json RewardJson(const Arena& arena, const std::vector<std::vector<Scalar>>& r) {
  Json out = Json::object();
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    Json row = Json::object();
    for (ActionId a = 0; a < arena.NumActions(s); ++a) {
      if (sgn(r[s][a]) != 0) row[arena.ActionName(s, a)] = Text(r[s][a]);
    }
    if (!row.empty()) out[arena.StateName(s)] = row;
  }
  return out;
}

Json StatesJson(const Arena& arena, const std::vector<StateId>& states) {
  Json out = Json::array();
  for (StateId s : states) out.push_back(arena.StateName(s));
  return out;
}

Json ScalarsJson(const std::vector<Scalar>& values) {
  Json out = Json::array();
  for (const Scalar& v : values) out.push_back(Text(v));
  return out;
}

Json PayoffJson(const Arena& arena, const PayoffSpec& spec) {
  Json j;
  j["family"] = FamilyName(FamilyOf(spec));
  if (const auto* d = std::get_if<Discounted>(&spec)) {
    j["discount"] = Text(d->discount);
    j["rewards"] = RewardJson(arena, d->rewards);
  } else if (const auto* f = std::get_if<FiniteHorizon>(&spec)) {
    j["horizon"] = f->horizon;
    j["rewards"] = Json::array();
    for (const auto& period : f->rewards) j["rewards"].push_back(RewardJson(arena, period));
  } else if (const auto* r = std::get_if<ReachedSet>(&spec)) {
    j["targets"] = Json::array();
    for (const auto& t : r->targets) j["targets"].push_back(StatesJson(arena, t));
    j["values"] = ScalarsJson(r->values);
  } else if (const auto* c = std::get_if<CappedHitting>(&spec)) {
    j["target"] = StatesJson(arena, c->target);
    j["cap"] = c->cap;
    j["values"] = ScalarsJson(c->values);
    j["unreached"] = Text(c->unreached);
  }
  return j;
}

}  // namespace

GameDocument ParseGame(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = LineColumn(text, e.byte > 0 ? e.byte - 1 : 0);
    throw InputError("syntax error at line " + std::to_string(line) +
                     ", column " + std::to_string(column) + ": " + e.what());
  }
  if (!j.is_object()) Fail("document", "expected an object");

  Names names;
  std::vector<std::string> players;
  const Json& player_list = Member(j, "players", "document");
  if (!player_list.is_array() || player_list.empty()) {
    Fail("players", "expected a nonempty list");
  }
  for (const Json& p : player_list) {
    std::string name = String(p, "players");
    if (!names.players.emplace(name, static_cast<PlayerId>(players.size())).second) {
      Fail("players", "duplicate player \"" + name + "\"");
    }
    players.push_back(name);
  }
  const Json& state_list = Member(j, "states", "document");
  if (!state_list.is_array() || state_list.empty()) {
    Fail("states", "expected a nonempty list");
  }
  std::vector<StateSpec> states;
  for (const Json& s : state_list) {
    std::string name = String(s, "states");
    if (!names.states.emplace(name, static_cast<StateId>(states.size())).second) {
      Fail("states", "duplicate state \"" + name + "\"");
    }
    states.push_back(StateSpec{name, 0, {}});
  }
  names.actions.resize(states.size());
  const Json& controller = Member(j, "controller", "document");
  for (StateId s = 0; s < static_cast<StateId>(states.size()); ++s) {
    const std::string where = "controller." + states[s].name;
    std::string player = String(Member(controller, states[s].name, "controller"), where);
    auto it = names.players.find(player);
    if (it == names.players.end()) Fail(where, "unknown player \"" + player + "\"");
    states[s].controller = it->second;
  }
  const Json& actions = Member(j, "actions", "document");
  for (StateId s = 0; s < static_cast<StateId>(states.size()); ++s) {
    const std::string where = "actions." + states[s].name;
    const Json& list = Member(actions, states[s].name, "actions");
    if (!list.is_array()) Fail(where, "expected a list");
    for (const Json& a : list) {
      std::string name = String(a, where);
      if (!names.actions[s].emplace(name, static_cast<ActionId>(states[s].actions.size())).second) {
        Fail(where, "duplicate action \"" + name + "\"");
      }
      states[s].actions.push_back(ActionSpec{name, {}});
    }
  }
  const Json& transitions = Member(j, "transitions", "document");
  if (!transitions.is_array()) Fail("transitions", "expected a list");
  std::vector<std::vector<bool>> seen(states.size());
  for (size_t s = 0; s < states.size(); ++s) seen[s].assign(states[s].actions.size(), false);
  for (size_t k = 0; k < transitions.size(); ++k) {
    const std::string where = "transitions[" + std::to_string(k) + "]";
    const Json& t = transitions[k];
    StateId s = names.State(Member(t, "state", where), where + ".state");
    ActionId a = names.Action(s, Member(t, "action", where), where + ".action");
    if (seen[s][a]) Fail(where, "second entry for the same state and action");
    seen[s][a] = true;
    const Json& to = Member(t, "to", where);
    if (!to.is_array()) Fail(where + ".to", "expected a list");
    for (const Json& entry : to) {
      Transition tr;
      tr.target = names.State(Member(entry, "target", where + ".to"), where + ".to.target");
      tr.prob = Rational(Member(entry, "prob", where + ".to"), where + ".to.prob");
      if (sgn(tr.prob) == 0) continue;
      states[s].actions[a].next.push_back(tr);
    }
  }
  StateId initial = names.State(Member(j, "initial", "document"), "initial");

  GameDocument doc;
  doc.arena = Arena(players, std::move(states), initial);
  RequireValidArena(doc.arena);
  const Json& payoffs = Member(j, "payoffs", "document");
  for (PlayerId p = 0; p < doc.arena.NumPlayers(); ++p) {
    const std::string where = "payoffs." + players[p];
    doc.specs.push_back(ParsePayoff(doc.arena, names, Member(payoffs, players[p], "payoffs"), where));
  }
  ValidateSpecs(doc.arena, doc.specs);
  if (j.contains("profile")) doc.profile = ParseProfile(doc.arena, names, j["profile"]);
  return doc;
}

GameDocument LoadGame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGame(buffer.str());
}

std::string SerializeGame(const GameDocument& doc) {
  const Arena& arena = doc.arena;
  Json j;
  j["players"] = arena.PlayerNames();
  j["states"] = Json::array();
  for (StateId s = 0; s < arena.NumStates(); ++s) j["states"].push_back(arena.StateName(s));
  j["initial"] = arena.StateName(arena.Initial());
  j["controller"] = Json::object();
  j["actions"] = Json::object();
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    j["controller"][arena.StateName(s)] = arena.PlayerName(arena.Controller(s));
    Json list = Json::array();
    for (ActionId a = 0; a < arena.NumActions(s); ++a) list.push_back(arena.ActionName(s, a));
    j["actions"][arena.StateName(s)] = list;
  }
  j["transitions"] = Json::array();
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    for (ActionId a = 0; a < arena.NumActions(s); ++a) {
      Json to = Json::array();
      for (const Transition& t : arena.Next(s, a)) {
        to.push_back({{"target", arena.StateName(t.target)}, {"prob", Text(t.prob)}});
      }
      j["transitions"].push_back({{"state", arena.StateName(s)},
                                  {"action", arena.ActionName(s, a)},
                                  {"to", to}});
    }
  }
  j["payoffs"] = Json::object();
  for (PlayerId p = 0; p < arena.NumPlayers(); ++p) {
    j["payoffs"][arena.PlayerName(p)] = PayoffJson(arena, doc.specs[p]);
  }
  if (doc.profile) {
    const StrategyProfile& profile = *doc.profile;
    Json next = Json::array();
    for (int m = 0; m < profile.memory.size; ++m) {
      Json row = Json::array();
      for (int e = 0; e < profile.memory.num_edges; ++e) row.push_back(profile.memory.Next(m, e));
      next.push_back(row);
    }
    Json choice = Json::array();
    for (int m = 0; m < profile.memory.size; ++m) {
      Json row = Json::object();
      for (StateId s = 0; s < arena.NumStates(); ++s) {
        row[arena.StateName(s)] = arena.ActionName(s, profile.choice[m][s]);
      }
      choice.push_back(row);
    }
    j["profile"] = {{"memory", {{"size", profile.memory.size},
                                {"initial", profile.memory.initial},
                                {"next", next}}},
                    {"choice", choice}};
  }
  return j.dump(2) + "\n";
}

}  // namespace seceq
