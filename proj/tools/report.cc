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

#include "report.h"

#include <sstream>

namespace seceq::tools {

namespace {

Json PayoffsJson(const Arena& arena, const std::vector<Scalar>& u) {
  Json out = Json::object();
  for (PlayerId p = 0; p < arena.NumPlayers(); ++p) {
    out[arena.PlayerName(p)] = ToString(u[p]);
  }
  return out;
}

std::string PayoffsText(const std::vector<Scalar>& u) { return ToString(u); }

Json CheckJson(const Arena& arena, const CheckResult& check) {
  Json out;
  out["holds"] = check.holds;
  out["exact"] = check.exact;
  if (check.witness) {
    out["witness"] = {
        {"deviator", arena.PlayerName(check.witness->deviator)},
        {"payoffs", PayoffsJson(arena, check.witness->payoffs)},
        {"strategy", StrategyJson(arena, check.witness->strategy)}};
  }
  return out;
}

std::string CheckText(const Arena& arena, const std::string& name,
                      const CheckResult& check) {
  std::ostringstream out;
  out << name << ": " << (check.holds ? "holds" : "fails");
  if (!check.exact) out << " (bounded search)";
  if (check.witness) {
    out << " (" << arena.PlayerName(check.witness->deviator)
        << " deviates, payoffs " << PayoffsText(check.witness->payoffs) << ")";
  }
  out << "\n";
  return out.str();
}

std::string StateSet(const Arena& arena, const std::vector<StateId>& states) {
  std::string out = "{";
  for (size_t k = 0; k < states.size(); ++k) {
    if (k) out += ", ";
    out += arena.StateName(states[k]);
  }
  return out + "}";
}

// Reached labels and hitting outcomes of a stable configuration.
Json ConfigurationJson(const Arena& arena, const PayoffTracker& tracker,
                       MemoryKey key) {
  Json reached = Json::array();
  for (size_t k = 0; k < tracker.Labels().size(); ++k) {
    if (tracker.Reached(key) & (1u << k)) {
      Json set = Json::array();
      for (StateId s : tracker.Labels()[k]) set.push_back(arena.StateName(s));
      reached.push_back(set);
    }
  }
  Json out;
  out["reached"] = reached;
  if (tracker.NumCapped() > 0) {
    Json hits = Json::object();
    for (int j = 0; j < tracker.NumCapped(); ++j) {
      const int outcome = tracker.Outcome(key, j);
      std::string text = "pending";
      if (outcome == PayoffTracker::kMissed) {
        text = "missed";
      } else if (outcome != 0) {
        text = ToString(tracker.Buckets(j)[outcome - 1]);
      }
      hits[arena.PlayerName(tracker.CappedPlayers()[j])] = text;
    }
    out["hitting_value"] = hits;
  }
  return out;
}

}  // namespace

Json StrategyJson(const Arena& arena, const FiniteMemoryStrategy& strategy) {
  Json next = Json::array();
  for (int m = 0; m < strategy.memory.size; ++m) {
    Json row = Json::array();
    for (int e = 0; e < strategy.memory.num_edges; ++e) {
      row.push_back(strategy.memory.Next(m, e));
    }
    next.push_back(row);
  }
  Json choice = Json::array();
  for (int m = 0; m < strategy.memory.size; ++m) {
    Json row = Json::object();
    for (StateId s = 0; s < arena.NumStates(); ++s) {
      if (arena.Controller(s) == strategy.owner) {
        row[arena.StateName(s)] = arena.ActionName(s, strategy.choice[m][s]);
      }
    }
    choice.push_back(row);
  }
  return {{"owner", arena.PlayerName(strategy.owner)},
          {"memory", {{"size", strategy.memory.size},
                      {"initial", strategy.memory.initial},
                      {"next", next}}},
          {"choice", choice}};
}

Json ReportJson(const Arena& arena, const EquilibriumReport& report) {
  Json out;
  out["payoffs"] = PayoffsJson(arena, report.payoffs);
  out["checks"] = {{"nash", CheckJson(arena, report.nash)},
                   {"secure", CheckJson(arena, report.secure)},
                   {"sum_secure", CheckJson(arena, report.sum_secure)},
                   {"strongly_secure", CheckJson(arena, report.strongly_secure)}};
  out["secure_formulations_agree"] = report.secure_formulations_agree;
  out["witnesses_replayed"] = report.witnesses_replayed;
  return out;
}

std::string ReportText(const Arena& arena, const EquilibriumReport& report) {
  std::ostringstream out;
  out << "payoffs:";
  for (PlayerId p = 0; p < arena.NumPlayers(); ++p) {
    out << " " << arena.PlayerName(p) << "=" << ToString(report.payoffs[p]);
  }
  out << "\n";
  out << CheckText(arena, "nash", report.nash);
  out << CheckText(arena, "secure", report.secure);
  out << CheckText(arena, "sum-secure", report.sum_secure);
  out << CheckText(arena, "strongly secure", report.strongly_secure);
  if (!report.secure_formulations_agree) {
    out << "warning: the two security formulations disagree\n";
  }
  if (!report.witnesses_replayed) out << "warning: a witness did not replay\n";
  return out.str();
}

Json TraceJson(const Arena& arena, const EliminationTrace& trace) {
  Json levels = Json::array();
  for (size_t k = 0; k < trace.levels.size(); ++k) {
    const EliminationLevel& level = trace.levels[k];
    Json states = Json::array();
    Json actions = Json::object();
    for (StateId s = 0; s < arena.NumStates(); ++s) {
      if (!level.states[s]) continue;
      states.push_back(arena.StateName(s));
      Json list = Json::array();
      for (ActionId a = 0; a < arena.NumActions(s); ++a) {
        if (level.actions[s][a]) list.push_back(arena.ActionName(s, a));
      }
      actions[arena.StateName(s)] = list;
    }
    Json values = Json::object();
    for (PlayerId p = 0; p < arena.NumPlayers(); ++p) {
      Json row = Json::object();
      for (StateId s = 0; s < arena.NumStates(); ++s) {
        if (level.states[s]) {
          row[arena.StateName(s)] = ToString(level.Values(p).state_values[s]);
        }
      }
      values[arena.PlayerName(p)] = row;
    }
    Json removed = Json::array();
    if (k > 0) {
      for (const auto& [s, a] : trace.removed[k - 1]) {
        removed.push_back({arena.StateName(s), arena.ActionName(s, a)});
      }
    }
    levels.push_back({{"level", level.index},
                      {"states", states},
                      {"actions", actions},
                      {"removed", removed},
                      {"values", values}});
  }
  Json phi = Json::object();
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    const int v = trace.phi[s];
    if (v == kInfiniteLevel) {
      phi[arena.StateName(s)] = "inf";
    } else if (v == kNeverReached) {
      phi[arena.StateName(s)] = "unreached";
    } else {
      phi[arena.StateName(s)] = v;
    }
  }
  return {{"levels", levels}, {"phi", phi}};
}

std::string TraceText(const Arena& arena, const EliminationTrace& trace) {
  std::ostringstream out;
  for (size_t k = 0; k < trace.levels.size(); ++k) {
    const EliminationLevel& level = trace.levels[k];
    std::vector<StateId> states;
    for (StateId s = 0; s < arena.NumStates(); ++s) {
      if (level.states[s]) states.push_back(s);
    }
    out << "level " << level.index << ": states " << StateSet(arena, states);
    if (k > 0) {
      out << ", removed";
      for (const auto& [s, a] : trace.removed[k - 1]) {
        out << " " << arena.StateName(s) << "/" << arena.ActionName(s, a);
      }
    }
    out << "\n";
    for (PlayerId p = 0; p < arena.NumPlayers(); ++p) {
      out << "  v_" << arena.PlayerName(p) << ":";
      for (StateId s : states) {
        out << " " << arena.StateName(s) << "=" << ToString(level.Values(p).state_values[s]);
      }
      out << "\n";
    }
  }
  out << "levels: " << trace.levels.size() << "\nphi:";
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    const int v = trace.phi[s];
    out << " " << arena.StateName(s) << "="
        << (v == kInfiniteLevel ? std::string("inf")
                                : v == kNeverReached ? std::string("unreached")
                                                     : std::to_string(v));
  }
  out << "\n";
  return out.str();
}

Json TransformJson(const Arena& arena, const PayoffTracker& tracker,
                   const std::optional<DeltaParams>& params,
                   const TransformedPayoffs& payoffs) {
  Json out;
  if (params) {
    Json range = Json::array();
    for (const Scalar& m : params->range) range.push_back(ToString(m));
    out["range"] = range;
    out["R"] = ToString(params->r);
    out["d"] = ToString(params->d);
    out["delta"] = ToString(params->delta);
  } else {
    out["delta"] = "0";
    out["trivial"] = true;
  }
  Json configs = Json::array();
  for (size_t k = 0; k < payoffs.configurations.size(); ++k) {
    Json c = ConfigurationJson(arena, tracker, payoffs.configurations[k]);
    c["original"] = PayoffsJson(arena, payoffs.original[k]);
    c["transformed"] = PayoffsJson(arena, payoffs.transformed[k]);
    configs.push_back(c);
  }
  out["configurations"] = configs;
  return out;
}

std::string TransformText(const Arena& arena, const PayoffTracker& tracker,
                          const std::optional<DeltaParams>& params,
                          const TransformedPayoffs& payoffs) {
  std::ostringstream out;
  if (params) {
    out << "M = " << ToString(params->range) << "\n";
    out << "R = " << ToString(params->r) << "\n";
    out << "d = " << ToString(params->d) << "\n";
    out << "delta = " << ToString(params->delta) << "\n";
  } else {
    out << "payoff range has a single value; the game is trivial\n";
  }
  for (size_t k = 0; k < payoffs.configurations.size(); ++k) {
    Json c = ConfigurationJson(arena, tracker, payoffs.configurations[k]);
    out << c.dump() << ": " << PayoffsText(payoffs.original[k]) << " -> "
        << PayoffsText(payoffs.transformed[k]) << "\n";
  }
  return out.str();
}

Json OracleJson(const Arena& arena, const OracleResult& result) {
  Json secure = Json::array();
  for (const OracleProfile& p : result.secure) {
    Json decisions = Json::array();
    for (size_t k = 0; k < result.points.size(); ++k) {
      decisions.push_back({result.points[k].description,
                           arena.ActionName(result.points[k].state, p.decisions[k])});
    }
    secure.push_back({{"index", p.index},
                      {"payoffs", PayoffsJson(arena, p.payoffs)},
                      {"sum_secure", p.sum_secure},
                      {"strongly_secure", p.strongly_secure},
                      {"decisions", decisions}});
  }
  return {{"strategy_class", StrategyClassName(result.strategy_class)},
          {"profiles", result.num_profiles},
          {"nash", result.num_nash},
          {"hierarchy_violations", result.hierarchy_violations},
          {"secure", secure}};
}

std::string OracleText(const Arena& arena, const OracleResult& result) {
  std::ostringstream out;
  out << "strategy class: " << StrategyClassName(result.strategy_class) << "\n";
  out << "profiles: " << result.num_profiles << ", Nash: " << result.num_nash
      << ", secure: " << result.secure.size() << "\n";
  for (const OracleProfile& p : result.secure) {
    out << "secure " << PayoffsText(p.payoffs)
        << (p.sum_secure ? " sum-secure" : "")
        << (p.strongly_secure ? " strongly-secure" : "") << ":";
    for (size_t k = 0; k < result.points.size(); ++k) {
      out << " [" << result.points[k].description << "]="
          << arena.ActionName(result.points[k].state, p.decisions[k]);
    }
    out << "\n";
  }
  if (result.hierarchy_violations > 0) {
    out << "hierarchy violations: " << result.hierarchy_violations << "\n";
  }
  return out.str();
}

}  // namespace seceq::tools
