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

#include "seceq/payoff.h"

#include <algorithm>
#include <set>

#include "seceq/errors.h"

namespace seceq {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckStateList(const Arena& arena, std::span<const StateId> states,
                    const std::string& where) {
  for (StateId s : states) {
    if (s < 0 || s >= arena.NumStates()) {
      throw InputError(where + ": state id " + std::to_string(s) +
                       " out of range");
    }
  }
}

void CheckRewardTable(const Arena& arena,
                      const std::vector<std::vector<Scalar>>& rewards,
                      const std::string& where) {
  if (static_cast<int>(rewards.size()) != arena.NumStates()) {
    throw InputError(where + ": reward table has wrong number of states");
  }
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    if (static_cast<int>(rewards[s].size()) != arena.NumActions(s)) {
      throw InputError(where + ": reward table has wrong number of actions at " +
                       arena.StateName(s));
    }
  }
}

bool HasTransition(const Arena& arena, StateId s, ActionId a, StateId z) {
  for (const Transition& t : arena.Next(s, a)) {
    if (t.target == z && t.prob > 0) return true;
  }
  return false;
}

}  // namespace

Family FamilyOf(const PayoffSpec& spec) {
  return std::visit(Overloaded{
                        [](const Discounted&) { return Family::kDiscounted; },
                        [](const FiniteHorizon&) {
                          return Family::kFiniteHorizon;
                        },
                        [](const ReachedSet&) { return Family::kReachedSet; },
                        [](const CappedHitting&) {
                          return Family::kCappedHitting;
                        },
                    },
                    spec);
}

std::string FamilyName(Family family) {
  switch (family) {
    case Family::kDiscounted:
      return "discounted";
    case Family::kFiniteHorizon:
      return "finite_horizon";
    case Family::kReachedSet:
      return "reached_set";
    case Family::kCappedHitting:
      return "capped_hitting";
  }
  return "unknown";
}

bool IsFiniteRange(const PayoffSpec& spec) {
  Family f = FamilyOf(spec);
  return f == Family::kReachedSet || f == Family::kCappedHitting;
}

std::vector<Scalar> PayoffRange(const PayoffSpec& spec) {
  std::vector<Scalar> values;
  if (const auto* r = std::get_if<ReachedSet>(&spec)) {
    values = r->values;
  } else if (const auto* c = std::get_if<CappedHitting>(&spec)) {
    values = c->values;
    values.push_back(c->unreached);
  } else {
    throw UnsupportedError("payoff range requested for a " +
                           FamilyName(FamilyOf(spec)) + " payoff");
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

int DefaultHittingCap(const Arena& arena) {
  return 2 * arena.NumPlayers() * arena.NumStates();
}

void ValidateSpecs(const Arena& arena, std::span<const PayoffSpec> specs) {
  if (static_cast<int>(specs.size()) != arena.NumPlayers()) {
    throw InputError("expected one payoff per player: got " +
                     std::to_string(specs.size()) + " for " +
                     std::to_string(arena.NumPlayers()) + " players");
  }
  const Scalar* shared_discount = nullptr;
  for (size_t i = 0; i < specs.size(); ++i) {
    const std::string where = "payoff of " + arena.PlayerName(i);
    std::visit(
        Overloaded{
            [&](const Discounted& d) {
              CheckRewardTable(arena, d.rewards, where);
              if (d.discount <= 0 || d.discount >= 1) {
                throw InputError(where + ": discount " + ToString(d.discount) +
                                 " outside (0, 1)");
              }
              if (shared_discount != nullptr && *shared_discount != d.discount) {
                throw InputError(where +
                                 ": all discounted payoffs must share one "
                                 "discount factor");
              }
              shared_discount = &d.discount;
            },
            [&](const FiniteHorizon& f) {
              if (f.horizon < 1) throw InputError(where + ": horizon < 1");
              if (static_cast<int>(f.rewards.size()) != f.horizon) {
                throw InputError(where + ": expected one reward table per period");
              }
              for (const auto& table : f.rewards) {
                CheckRewardTable(arena, table, where);
              }
            },
            [&](const ReachedSet& r) {
              if (r.targets.size() > 16) {
                throw UnsupportedError(where + ": more than 16 target sets");
              }
              for (const auto& t : r.targets) CheckStateList(arena, t, where);
              if (r.values.size() != (size_t{1} << r.targets.size())) {
                throw InputError(where + ": value map must have 2^" +
                                 std::to_string(r.targets.size()) + " entries");
              }
            },
            [&](const CappedHitting& c) {
              CheckStateList(arena, c.target, where);
              if (c.cap < 0) throw InputError(where + ": negative cap");
              if (c.cap > 254) {
                throw UnsupportedError(where + ": cap above 254");
              }
              if (static_cast<int>(c.values.size()) != c.cap + 1) {
                throw InputError(where + ": expected cap + 1 hitting values");
              }
            },
        },
        specs[i]);
  }
}

bool AllOfFamily(std::span<const PayoffSpec> specs, Family family) {
  return std::all_of(specs.begin(), specs.end(), [&](const PayoffSpec& s) {
    return FamilyOf(s) == family;
  });
}

bool AllFiniteRange(std::span<const PayoffSpec> specs) {
  return std::all_of(specs.begin(), specs.end(), IsFiniteRange);
}

std::vector<std::vector<Scalar>> ZeroRewards(const Arena& arena) {
  std::vector<std::vector<Scalar>> rewards(arena.NumStates());
  for (StateId s = 0; s < arena.NumStates(); ++s) {
    rewards[s].assign(arena.NumActions(s), Scalar(0));
  }
  return rewards;
}

void ValidateLasso(const Arena& arena, const Lasso& lasso) {
  if (lasso.cycle.empty()) throw InputError("lasso: empty cycle");
  std::vector<Step> steps = lasso.prefix;
  steps.insert(steps.end(), lasso.cycle.begin(), lasso.cycle.end());
  if (steps.front().state != arena.Initial()) {
    throw InputError("lasso: does not start at the initial state");
  }
  for (size_t t = 0; t < steps.size(); ++t) {
    const Step& step = steps[t];
    if (step.state < 0 || step.state >= arena.NumStates() || step.action < 0 ||
        step.action >= arena.NumActions(step.state)) {
      throw InputError("lasso: invalid step at position " + std::to_string(t));
    }
    StateId next =
        t + 1 < steps.size() ? steps[t + 1].state : lasso.cycle.front().state;
    if (!HasTransition(arena, step.state, step.action, next)) {
      throw InputError("lasso: impossible transition at position " +
                       std::to_string(t));
    }
  }
}

long FirstHittingTime(const Lasso& lasso, std::span<const StateId> target) {
  std::set<StateId> in_target(target.begin(), target.end());
  long t = 0;
  for (const Step& step : lasso.prefix) {
    if (in_target.count(step.state)) return t;
    ++t;
  }
  for (const Step& step : lasso.cycle) {
    if (in_target.count(step.state)) return t;
    ++t;
  }
  return -1;
}

Scalar EvaluateOnLasso(const Arena& arena, const PayoffSpec& spec,
                       const Lasso& lasso) {
  ValidateLasso(arena, lasso);
  return std::visit(
      Overloaded{
          [&](const Discounted& d) {
            Scalar prefix_sum = 0, weight = 1;
            for (const Step& step : lasso.prefix) {
              prefix_sum += weight * d.rewards[step.state][step.action];
              weight *= d.discount;
            }
            Scalar cycle_sum = 0, cycle_weight = 1;
            for (const Step& step : lasso.cycle) {
              cycle_sum += cycle_weight * d.rewards[step.state][step.action];
              cycle_weight *= d.discount;
            }
            return Scalar(prefix_sum + weight * cycle_sum / (1 - cycle_weight));
          },
          [&](const FiniteHorizon& f) {
            Scalar total = 0;
            for (int t = 0; t < f.horizon; ++t) {
              const Step& step =
                  t < static_cast<int>(lasso.prefix.size())
                      ? lasso.prefix[t]
                      : lasso.cycle[(t - lasso.prefix.size()) %
                                    lasso.cycle.size()];
              total += f.rewards[t][step.state][step.action];
            }
            return total;
          },
          [&](const ReachedSet& r) {
            size_t mask = 0;
            for (size_t k = 0; k < r.targets.size(); ++k) {
              if (FirstHittingTime(lasso, r.targets[k]) >= 0) mask |= size_t{1} << k;
            }
            return r.values[mask];
          },
          [&](const CappedHitting& c) {
            long t = FirstHittingTime(lasso, c.target);
            if (t >= 0 && t <= c.cap) return c.values[t];
            return c.unreached;
          },
      },
      spec);
}

}  // namespace seceq
