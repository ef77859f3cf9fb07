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

#include "seceq/secure.h"

#include "seceq/errors.h"
#include "seceq/markov.h"
#include "seceq/product.h"

namespace seceq {

PunishmentKit MakePunishmentKit(const EliminationTrace& trace) {
  PunishmentKit kit;
  for (const ZeroSumSolution& s : trace.levels.front().solutions) {
    kit.full.push_back(s.choice);
  }
  for (const ZeroSumSolution& s : trace.Fixpoint().solutions) {
    kit.restricted.push_back(s.choice);
  }
  return kit;
}

SumMinimizer MinimizeSumProfile(const RewardGame& game, const ActionMask& mask,
                                std::span<const Scalar> weights) {
  const int n = game.NumPlayers();
  std::vector<Scalar> w(weights.begin(), weights.end());
  if (w.empty()) w.assign(n, Scalar(1));
  if (static_cast<int>(w.size()) != n) {
    throw InputError("expected one weight per player");
  }
  for (const Scalar& x : w) {
    if (x < 0) throw InputError("weights must be nonnegative");
  }
  const Arena& arena = game.arena;
  const int size = arena.NumStates();
  auto build = [&](const std::vector<Scalar>& c) {
    Mdp mdp;
    mdp.discount = game.discount;
    mdp.actions.resize(size);
    mdp.fixed.assign(size, Scalar(0));
    for (StateId s = 0; s < size; ++s) {
      if (game.terminal[s]) continue;
      for (ActionId a = 0; a < arena.NumActions(s); ++a) {
        if (!mask[s][a]) continue;
        MdpAction action;
        for (const Transition& t : arena.Next(s, a)) {
          action.next.emplace_back(t.target, t.prob);
        }
        action.reward = 0;
        for (PlayerId p = 0; p < n; ++p) action.reward += c[p] * game.rewards[p][s][a];
        mdp.actions[s].push_back(std::move(action));
      }
    }
    return mdp;
  };
  const Mdp mdp = build(w);
  MdpSolution solved = SolveMdp(mdp, Sense::kMin);
  SumMinimizer out;
  out.choice.assign(size, 0);
  for (StateId s = 0; s < size; ++s) {
    int k = solved.policy[s];
    if (k < 0) continue;
    for (ActionId a = 0; a < arena.NumActions(s); ++a) {
      if (mask[s][a] && k-- == 0) {
        out.choice[s] = a;
        break;
      }
    }
  }
  out.weighted_sum = solved.value[arena.Initial()];
  for (PlayerId p = 0; p < n; ++p) {
    std::vector<Scalar> unit(n, Scalar(0));
    unit[p] = 1;
    out.payoffs.push_back(
        EvaluatePolicy(build(unit), solved.policy)[arena.Initial()]);
  }
  return out;
}

MemoryAutomaton BuildLabelAutomaton(const Arena& arena,
                                    const std::vector<ActionId>& rho,
                                    const ActionMask& restricted) {
  DeviatorLabel label{arena.NumPlayers()};
  MemoryAutomaton memory;
  memory.size = label.Size();
  memory.initial = DeviatorLabel::kNone;
  memory.num_edges = arena.NumEdges();
  memory.next.assign(static_cast<size_t>(memory.size) * memory.num_edges, 0);
  for (int m = 0; m < memory.size; ++m) {
    for (StateId s = 0; s < arena.NumStates(); ++s) {
      for (ActionId a = 0; a < arena.NumActions(s); ++a) {
        const bool kept = restricted[s][a];
        int next = m;
        if (m == DeviatorLabel::kNone) {
          if (a != rho[s]) next = DeviatorLabel::Encode(arena.Controller(s), !kept);
        } else if (!DeviatorLabel::Outside(m) && !kept) {
          next = DeviatorLabel::Encode(DeviatorLabel::Deviator(m), true);
        }
        for (int k = 0; k < static_cast<int>(arena.Next(s, a).size()); ++k) {
          memory.SetNext(m, arena.EdgeIndex(s, a, k), next);
        }
      }
    }
  }
  return memory;
}

StrategyProfile AssembleSecureProfile(const Arena& arena,
                                      const std::vector<ActionId>& rho,
                                      const ActionMask& restricted,
                                      const PunishmentKit& kit) {
  StrategyProfile profile;
  profile.memory = BuildLabelAutomaton(arena, rho, restricted);
  profile.choice.assign(profile.memory.size,
                        std::vector<ActionId>(arena.NumStates(), 0));
  for (int m = 0; m < profile.memory.size; ++m) {
    for (StateId s = 0; s < arena.NumStates(); ++s) {
      ActionId& choice = profile.choice[m][s];
      if (m == DeviatorLabel::kNone) {
        choice = rho[s];
        continue;
      }
      const PlayerId deviator = DeviatorLabel::Deviator(m);
      const bool outside = DeviatorLabel::Outside(m);
      if (arena.Controller(s) == deviator) {
        // The deviator himself: any action of G^infinity while inside.
        choice = 0;
        if (!outside) {
          for (ActionId a = 0; a < arena.NumActions(s); ++a) {
            if (restricted[s][a]) {
              choice = a;
              break;
            }
          }
        }
      } else {
        choice = outside ? kit.full[deviator][s] : kit.restricted[deviator][s];
      }
    }
  }
  return profile;
}

SecureResult ConstructSecureEquilibrium(const Arena& arena,
                                        std::span<const PayoffSpec> specs,
                                        std::span<const Scalar> weights) {
  SecureResult out;
  out.game = RewardGameFromSpecs(arena, specs);
  out.trace = EliminateFixpoint(out.game);
  const ActionMask& restricted = out.trace.Fixpoint().actions;
  out.rho = MinimizeSumProfile(out.game, restricted, weights);
  out.on_game = AssembleSecureProfile(out.game.arena, out.rho.choice,
                                      restricted,
                                      MakePunishmentKit(out.trace));
  if (out.game.product) {
    out.profile = LiftProfile(arena, *out.game.product, *out.game.transducer,
                              out.on_game);
  } else {
    out.profile = out.on_game;
  }
  out.report = Verify(arena, specs, out.profile, weights);
  return out;
}

}  // namespace seceq
