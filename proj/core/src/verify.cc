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

#include "seceq/verify.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "seceq/errors.h"
#include "seceq/evaluate.h"
#include "seceq/markov.h"
#include "seceq/product.h"

namespace seceq {

bool HurtsWithoutHelping(PlayerId deviator, std::span<const Scalar> reference,
                         std::span<const Scalar> deviation) {
  bool strict = false;
  for (size_t j = 0; j < reference.size(); ++j) {
    if (static_cast<PlayerId>(j) == deviator) continue;
    if (deviation[j] > reference[j]) return false;
    strict = strict || deviation[j] < reference[j];
  }
  return strict;
}

bool SecureFormulationA(PlayerId deviator, std::span<const Scalar> reference,
                        const std::vector<std::vector<Scalar>>& deviations) {
  for (const auto& u : deviations) {
    if (HurtsWithoutHelping(deviator, reference, u)) return false;
  }
  return true;
}

bool SecureFormulationB(PlayerId, std::span<const Scalar> reference,
                        const std::vector<std::vector<Scalar>>& deviations) {
  // Whoever loses must be compensated by somebody who gains.
  for (const auto& u : deviations) {
    bool someone_loses = false, someone_gains = false;
    for (size_t j = 0; j < reference.size(); ++j) {
      someone_loses = someone_loses || u[j] < reference[j];
      someone_gains = someone_gains || u[j] > reference[j];
    }
    if (someone_loses && !someone_gains) return false;
  }
  return true;
}

std::string HierarchyViolation(const EquilibriumReport& report,
                               int num_players) {
  if (report.strongly_secure.holds && !report.sum_secure.holds) {
    return "strongly secure but not sum-secure";
  }
  if (report.sum_secure.holds && !report.secure.holds) {
    return "sum-secure but not secure";
  }
  if (report.secure.holds && !report.nash.holds) return "secure but not Nash";
  if (num_players == 2 && report.secure.holds != report.strongly_secure.holds) {
    return "two players: secure and strongly secure differ";
  }
  return "";
}

namespace {

constexpr size_t kMaxVectorsPerNode = 20000;
constexpr long kMaxPositionalDeviations = 20000;

struct GraphAction {
  ActionId action = 0;
  std::vector<int> next;  // aligned with the arena's successor order
  std::vector<Scalar> prob;
};

// Plays of the profile where `player` may deviate: nodes are (state, payoff
// memory, profile memory); the deviator's nodes offer every action.
struct DeviationGraph {
  std::vector<StateId> state;
  std::vector<MemoryKey> key;
  std::vector<int> memory;
  std::vector<std::vector<GraphAction>> actions;

  int size() const { return static_cast<int>(state.size()); }
};

DeviationGraph BuildDeviationGraph(const Arena& arena,
                                   const PayoffTracker& tracker,
                                   const StrategyProfile& profile,
                                   PlayerId player) {
  DeviationGraph g;
  std::map<std::tuple<StateId, MemoryKey, int>, int> ids;
  std::deque<int> queue;
  auto intern = [&](StateId s, MemoryKey key, int m) {
    auto [it, inserted] = ids.emplace(std::make_tuple(s, key, m), g.size());
    if (inserted) {
      g.state.push_back(s);
      g.key.push_back(key);
      g.memory.push_back(m);
      g.actions.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };
  intern(arena.Initial(), tracker.Initial(), profile.memory.initial);
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    const StateId s = g.state[x];
    const MemoryKey key = g.key[x];
    const int m = g.memory[x];
    std::vector<GraphAction> out;
    for (ActionId a = 0; a < arena.NumActions(s); ++a) {
      if (arena.Controller(s) != player && a != profile.Choose(m, s)) continue;
      GraphAction action{a, {}, {}};
      const Distribution& dist = arena.Next(s, a);
      for (size_t k = 0; k < dist.size(); ++k) {
        const StateId z = dist[k].target;
        const int m2 = profile.memory.Next(arena, m, s, a, static_cast<int>(k));
        action.next.push_back(intern(z, tracker.Advance(key, z), m2));
        action.prob.push_back(dist[k].prob);
      }
      out.push_back(std::move(action));
    }
    g.actions[x] = std::move(out);
  }
  return g;
}

// Deviation strategy that plays choice[x] (an index into g.actions[x]) at
// node x. Memory = graph node, plus an absorbing sink for off-graph moves.
FiniteMemoryStrategy GraphStrategy(const Arena& arena, const DeviationGraph& g,
                                   const std::vector<int>& choice,
                                   PlayerId owner) {
  const int sink = g.size();
  FiniteMemoryStrategy strategy;
  strategy.owner = owner;
  strategy.memory.size = g.size() + 1;
  strategy.memory.initial = 0;
  strategy.memory.num_edges = arena.NumEdges();
  strategy.memory.next.assign(
      static_cast<size_t>(strategy.memory.size) * arena.NumEdges(), sink);
  strategy.choice.assign(strategy.memory.size,
                         std::vector<ActionId>(arena.NumStates(), 0));
  for (int x = 0; x < g.size(); ++x) {
    const StateId s = g.state[x];
    if (choice[x] >= 0) {
      strategy.choice[x][s] = g.actions[x][choice[x]].action;
    }
    for (const GraphAction& action : g.actions[x]) {
      for (size_t k = 0; k < action.next.size(); ++k) {
        strategy.memory.SetNext(
            x, arena.EdgeIndex(s, action.action, static_cast<int>(k)),
            action.next[k]);
      }
    }
  }
  return strategy;
}

// Deviation strategy following a fixed node/action sequence; positions from
// `loop_start` on repeat forever.
FiniteMemoryStrategy SequenceStrategy(
    const Arena& arena, const DeviationGraph& g,
    const std::vector<std::pair<int, int>>& steps, size_t loop_start,
    PlayerId owner) {
  const int length = static_cast<int>(steps.size());
  const int sink = length;
  FiniteMemoryStrategy strategy;
  strategy.owner = owner;
  strategy.memory.size = length + 1;
  strategy.memory.initial = 0;
  strategy.memory.num_edges = arena.NumEdges();
  strategy.memory.next.assign(
      static_cast<size_t>(strategy.memory.size) * arena.NumEdges(), sink);
  strategy.choice.assign(strategy.memory.size,
                         std::vector<ActionId>(arena.NumStates(), 0));
  for (int p = 0; p < length; ++p) {
    const auto [x, k] = steps[p];
    const GraphAction& action = g.actions[x][k];
    strategy.choice[p][g.state[x]] = action.action;
    const int following = p + 1 < length ? p + 1 : static_cast<int>(loop_start);
    strategy.memory.SetNext(p, arena.EdgeIndex(g.state[x], action.action, 0),
                            following);
  }
  return strategy;
}

enum class Mode { kReward, kFiniteRange };

struct Context {
  const Arena& arena;
  std::span<const PayoffSpec> specs;
  const StrategyProfile& profile;
  PayoffTracker tracker;
  Mode mode;
  std::vector<Scalar> payoffs;
  std::vector<Scalar> weights;  // never empty
  bool unit_weights = true;

  Context(const Arena& a, std::span<const PayoffSpec> s,
          const StrategyProfile& p, std::span<const Scalar> w)
      : arena(a), specs(s), profile(p), tracker(a, s), mode(Mode::kReward) {
    RequireValidArena(arena);
    ValidateSpecs(arena, specs);
    ValidateProfile(arena, profile);
    if (AllOfFamily(specs, Family::kDiscounted) ||
        AllOfFamily(specs, Family::kFiniteHorizon)) {
      mode = Mode::kReward;
    } else if (AllFiniteRange(specs)) {
      if (!arena.IsDeterministic()) {
        throw UnsupportedError(
            "finite-range payoffs are verified on deterministic arenas only");
      }
      mode = Mode::kFiniteRange;
    } else {
      throw UnsupportedError(
          "verification needs all-discounted, all-finite-horizon or "
          "all-finite-range payoffs");
    }
    if (w.empty()) {
      weights.assign(arena.NumPlayers(), Scalar(1));
    } else {
      if (static_cast<int>(w.size()) != arena.NumPlayers()) {
        throw InputError("expected one weight per player");
      }
      for (const Scalar& x : w) {
        if (x < 0) throw InputError("weights must be nonnegative");
        unit_weights = unit_weights && x == 1;
      }
      weights.assign(w.begin(), w.end());
    }
    payoffs = ExpectedPayoffs(arena, specs, profile);
  }
};

Scalar OpponentSum(PlayerId i, std::span<const Scalar> u,
                   std::span<const Scalar> weights) {
  Scalar sum = 0;
  for (size_t j = 0; j < u.size(); ++j) {
    if (static_cast<PlayerId>(j) != i) sum += weights[j] * u[j];
  }
  return sum;
}

// Everything the checks need to know about deviations of one player.
struct PlayerAnalysis {
  Scalar best;
  Witness best_witness;
  // Among deviations worth `best` to the deviator:
  Scalar min_weighted_sum;
  Witness weighted_sum_witness;
  Scalar min_sum;
  std::vector<Scalar> min_opponent;             // [player]
  std::vector<std::optional<Witness>> opponent_witness;
  // Security verdict, meaningful when best equals the profile's payoff.
  bool secure = true;
  bool secure_exact = true;
  bool formulations_agree = true;
  std::optional<Witness> secure_witness;
};

class Analyzer {
 public:
  explicit Analyzer(const Context& ctx) : ctx_(ctx) {}

  PlayerAnalysis Analyze(PlayerId i) const {
    DeviationGraph g = BuildDeviationGraph(ctx_.arena, ctx_.tracker,
                                           ctx_.profile, i);
    return ctx_.mode == Mode::kReward ? AnalyzeReward(g, i)
                                      : AnalyzeFiniteRange(g, i);
  }

 private:
  std::vector<Scalar> Unit(PlayerId p) const {
    std::vector<Scalar> c(ctx_.arena.NumPlayers(), Scalar(0));
    c[p] = 1;
    return c;
  }

  Mdp MakeMdp(const DeviationGraph& g, const std::vector<Scalar>& c) const {
    Mdp mdp;
    mdp.discount = ctx_.tracker.Discount(0);
    mdp.actions.resize(g.size());
    mdp.fixed.assign(g.size(), Scalar(0));
    for (int x = 0; x < g.size(); ++x) {
      if (ctx_.tracker.RewardsExhausted(g.key[x])) continue;
      for (const GraphAction& action : g.actions[x]) {
        MdpAction out;
        for (size_t k = 0; k < action.next.size(); ++k) {
          out.next.emplace_back(action.next[k], action.prob[k]);
        }
        out.reward = 0;
        for (size_t p = 0; p < c.size(); ++p) {
          if (sgn(c[p]) != 0) {
            out.reward += c[p] * ctx_.tracker.StepReward(
                                     static_cast<PlayerId>(p), g.key[x],
                                     g.state[x], action.action);
          }
        }
        mdp.actions[x].push_back(std::move(out));
      }
    }
    return mdp;
  }

  std::vector<Scalar> PayoffsOf(const DeviationGraph& g,
                                const std::vector<int>& policy) const {
    std::vector<Scalar> u;
    for (PlayerId p = 0; p < ctx_.arena.NumPlayers(); ++p) {
      u.push_back(EvaluatePolicy(MakeMdp(g, Unit(p)), policy)[0]);
    }
    return u;
  }

  Witness MakeWitness(const DeviationGraph& g, const std::vector<int>& policy,
                      PlayerId i) const {
    return Witness{i, GraphStrategy(ctx_.arena, g, policy, i),
                   PayoffsOf(g, policy)};
  }

  PlayerAnalysis AnalyzeReward(const DeviationGraph& g, PlayerId i) const {
    const int n = ctx_.arena.NumPlayers();
    PlayerAnalysis out;
    const Mdp own = MakeMdp(g, Unit(i));
    MdpSolution best = SolveMdp(own, Sense::kMax);
    out.best = best.value[0];
    out.best_witness = MakeWitness(g, best.policy, i);

    // Deviations worth `best` use conserving actions only.
    DeviationGraph kept = g;
    for (int x = 0; x < g.size(); ++x) {
      if (own.actions[x].empty()) continue;
      std::vector<GraphAction> actions;
      for (int k : OptimalChoices(own, best.value, x)) {
        actions.push_back(g.actions[x][k]);
      }
      kept.actions[x] = std::move(actions);
    }

    std::vector<std::vector<Scalar>> candidates;
    std::vector<Witness> candidate_witness;
    auto minimize = [&](const std::vector<Scalar>& c) {
      MdpSolution sol = SolveMdp(MakeMdp(kept, c), Sense::kMin);
      Witness w = MakeWitness(kept, sol.policy, i);
      candidates.push_back(w.payoffs);
      candidate_witness.push_back(w);
      return std::make_pair(sol.value[0], w);
    };
    std::vector<Scalar> ones(n, Scalar(1)), weighted = ctx_.weights;
    ones[i] = 0;
    weighted[i] = 0;
    auto [sum, sum_witness] = minimize(ones);
    out.min_sum = sum;
    out.min_weighted_sum = sum;
    out.weighted_sum_witness = sum_witness;
    if (!ctx_.unit_weights) {
      auto [wsum, wsum_witness] = minimize(weighted);
      out.min_weighted_sum = wsum;
      out.weighted_sum_witness = wsum_witness;
    }
    out.min_opponent.assign(n, Scalar(0));
    out.opponent_witness.resize(n);
    bool strongly = true;
    for (PlayerId j = 0; j < n; ++j) {
      if (j == i) continue;
      auto [value, witness] = minimize(Unit(j));
      out.min_opponent[j] = value;
      out.opponent_witness[j] = witness;
      strongly = strongly && value >= ctx_.payoffs[j];
    }

    const bool sum_secure =
        out.min_sum >= OpponentSum(i, ctx_.payoffs, std::vector<Scalar>(n, 1));
    // Exact shortcuts first: a witness among the candidates, two players,
    // or a stronger notion that already holds.
    PlayerAnalysis result = Finish(out, candidates, candidate_witness, i);
    if (!result.secure || n == 2 || sum_secure || strongly) return result;
    if (AllOfFamily(ctx_.specs, Family::kFiniteHorizon) &&
        EnumerateTree(kept, i, &candidates, &candidate_witness)) {
      return Finish(out, candidates, candidate_witness, i);
    }
    SearchPositional(kept, i, &candidates, &candidate_witness);
    result = Finish(out, candidates, candidate_witness, i);
    if (result.secure) result.secure_exact = false;
    return result;
  }

  PlayerAnalysis Finish(PlayerAnalysis out,
                        const std::vector<std::vector<Scalar>>& candidates,
                        const std::vector<Witness>& witnesses,
                        PlayerId i) const {
    out.secure = SecureFormulationA(i, ctx_.payoffs, candidates);
    out.formulations_agree =
        out.secure == SecureFormulationB(i, ctx_.payoffs, candidates);
    out.secure_witness.reset();
    for (size_t k = 0; k < candidates.size(); ++k) {
      if (HurtsWithoutHelping(i, ctx_.payoffs, candidates[k])) {
        out.secure_witness = witnesses[k];
        break;
      }
    }
    return out;
  }

  // Exact set of payoff vectors of pure deviations on an acyclic graph
  // (finite horizon). Returns false if the sets grow too large.
  bool EnumerateTree(const DeviationGraph& g, PlayerId i,
                     std::vector<std::vector<Scalar>>* candidates,
                     std::vector<Witness>* witnesses) const {
    const int n = ctx_.arena.NumPlayers();
    struct Origin {
      int action = -1;
      std::vector<int> parts;  // vector index per successor
    };
    std::vector<std::vector<std::vector<Scalar>>> sets(g.size());
    std::vector<std::vector<Origin>> origins(g.size());
    std::vector<bool> done(g.size(), false);
    bool overflow = false;
    std::function<void(int)> visit = [&](int x) {
      if (done[x] || overflow) return;
      done[x] = true;
      if (ctx_.tracker.RewardsExhausted(g.key[x])) {
        sets[x] = {std::vector<Scalar>(n, Scalar(0))};
        origins[x] = {Origin{}};
        return;
      }
      std::map<std::vector<Scalar>, Origin> found;
      for (int k = 0; k < static_cast<int>(g.actions[x].size()); ++k) {
        const GraphAction& action = g.actions[x][k];
        for (int y : action.next) visit(y);
        if (overflow) return;
        std::vector<Scalar> base(n);
        for (PlayerId p = 0; p < n; ++p) {
          base[p] = ctx_.tracker.StepReward(p, g.key[x], g.state[x],
                                            action.action);
        }
        // Mixed-radix walk over one vector per successor.
        std::vector<int> pick(action.next.size(), 0);
        while (true) {
          std::vector<Scalar> u = base;
          for (size_t t = 0; t < pick.size(); ++t) {
            const auto& v = sets[action.next[t]][pick[t]];
            for (PlayerId p = 0; p < n; ++p) u[p] += action.prob[t] * v[p];
          }
          found.emplace(std::move(u), Origin{k, pick});
          if (found.size() > kMaxVectorsPerNode) {
            overflow = true;
            return;
          }
          size_t t = 0;
          while (t < pick.size() &&
                 ++pick[t] == static_cast<int>(sets[action.next[t]].size())) {
            pick[t++] = 0;
          }
          if (t == pick.size()) break;
        }
      }
      for (auto& [u, origin] : found) {
        sets[x].push_back(u);
        origins[x].push_back(origin);
      }
    };
    visit(0);
    if (overflow) return false;
    for (size_t v = 0; v < sets[0].size(); ++v) {
      candidates->push_back(sets[0][v]);
      if (HurtsWithoutHelping(i, ctx_.payoffs, sets[0][v])) {
        witnesses->push_back(
            Witness{i, TreeStrategy(g, origins, 0, static_cast<int>(v), i),
                    sets[0][v]});
      } else {
        witnesses->emplace_back();
      }
    }
    return true;
  }

  template <typename Origins>
  FiniteMemoryStrategy TreeStrategy(const DeviationGraph& g,
                                    const Origins& origins, int root,
                                    int root_vector, PlayerId owner) const {
    const Arena& arena = ctx_.arena;
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> items;
    auto intern = [&](int x, int v) {
      auto [it, inserted] = ids.emplace(std::make_pair(x, v),
                                        static_cast<int>(items.size()));
      if (inserted) items.emplace_back(x, v);
      return it->second;
    };
    intern(root, root_vector);
    for (size_t idx = 0; idx < items.size(); ++idx) {
      const auto [x, v] = items[idx];
      const auto& origin = origins[x][v];
      if (origin.action < 0) continue;
      const GraphAction& action = g.actions[x][origin.action];
      for (size_t t = 0; t < action.next.size(); ++t) {
        intern(action.next[t], origin.parts[t]);
      }
    }
    const int sink = static_cast<int>(items.size());
    FiniteMemoryStrategy strategy;
    strategy.owner = owner;
    strategy.memory.size = sink + 1;
    strategy.memory.initial = 0;
    strategy.memory.num_edges = arena.NumEdges();
    strategy.memory.next.assign(
        static_cast<size_t>(strategy.memory.size) * arena.NumEdges(), sink);
    strategy.choice.assign(strategy.memory.size,
                           std::vector<ActionId>(arena.NumStates(), 0));
    for (size_t idx = 0; idx < items.size(); ++idx) {
      const auto [x, v] = items[idx];
      const auto& origin = origins[x][v];
      if (origin.action < 0) continue;
      const GraphAction& action = g.actions[x][origin.action];
      strategy.choice[idx][g.state[x]] = action.action;
      for (size_t t = 0; t < action.next.size(); ++t) {
        strategy.memory.SetNext(
            static_cast<int>(idx),
            arena.EdgeIndex(g.state[x], action.action, static_cast<int>(t)),
            ids.at({action.next[t], origin.parts[t]}));
      }
    }
    return strategy;
  }

  // Bounded search over positional deviations on the conserving graph.
  void SearchPositional(const DeviationGraph& g, PlayerId i,
                        std::vector<std::vector<Scalar>>* candidates,
                        std::vector<Witness>* witnesses) const {
    std::vector<int> free;
    long count = 1;
    for (int x = 0; x < g.size(); ++x) {
      if (g.actions[x].size() > 1) {
        free.push_back(x);
        count *= static_cast<long>(g.actions[x].size());
        if (count > kMaxPositionalDeviations) return;
      }
    }
    std::vector<int> policy(g.size(), 0);
    for (int x = 0; x < g.size(); ++x) {
      if (g.actions[x].empty()) policy[x] = -1;
    }
    while (true) {
      std::vector<Scalar> u = PayoffsOf(g, policy);
      if (HurtsWithoutHelping(i, ctx_.payoffs, u)) {
        candidates->push_back(u);
        witnesses->push_back(MakeWitness(g, policy, i));
        return;
      }
      size_t t = 0;
      while (t < free.size() &&
             ++policy[free[t]] == static_cast<int>(g.actions[free[t]].size())) {
        policy[free[t++]] = 0;
      }
      if (t == free.size()) return;
    }
  }

  PlayerAnalysis AnalyzeFiniteRange(const DeviationGraph& g, PlayerId i) const {
    const int n = ctx_.arena.NumPlayers();
    std::vector<std::vector<int>> edges(g.size());
    for (int x = 0; x < g.size(); ++x) {
      for (const GraphAction& a : g.actions[x]) edges[x].push_back(a.next[0]);
    }
    // Limit configurations: nodes on a cycle.
    std::vector<int> component(g.size());
    const auto components = StronglyConnectedComponents(edges);
    std::vector<bool> cyclic(g.size(), false);
    for (size_t c = 0; c < components.size(); ++c) {
      for (int x : components[c]) component[x] = static_cast<int>(c);
    }
    for (int x = 0; x < g.size(); ++x) {
      for (int y : edges[x]) {
        if (component[y] == component[x]) cyclic[x] = true;
      }
    }
    std::map<std::vector<Scalar>, int> configs;
    for (int x = 0; x < g.size(); ++x) {
      if (!cyclic[x]) continue;
      std::vector<Scalar> u;
      for (PlayerId p = 0; p < n; ++p) {
        u.push_back(ctx_.tracker.LimitPayoff(p, g.key[x]));
      }
      configs.emplace(std::move(u), x);
    }
    auto witness_for = [&](int target, const std::vector<Scalar>& u) {
      return Witness{i, PathStrategy(g, edges, target, i), u};
    };
    PlayerAnalysis out;
    bool first = true;
    for (const auto& [u, x] : configs) {
      if (first || u[i] > out.best) {
        out.best = u[i];
        out.best_witness = witness_for(x, u);
        first = false;
      }
    }
    std::vector<std::vector<Scalar>> candidates;
    std::vector<int> where;
    for (const auto& [u, x] : configs) {
      if (u[i] == ctx_.payoffs[i]) {
        candidates.push_back(u);
        where.push_back(x);
      }
    }
    // With Nash failing nothing below is used; keep the fields defined.
    if (candidates.empty()) {
      out.min_opponent.assign(n, Scalar(0));
      out.opponent_witness.resize(n);
      out.weighted_sum_witness = out.best_witness;
      return out;
    }
    std::vector<Scalar> ones(n, Scalar(1));
    auto argmin = [&](const std::function<Scalar(const std::vector<Scalar>&)>& f) {
      size_t best = 0;
      for (size_t k = 1; k < candidates.size(); ++k) {
        if (f(candidates[k]) < f(candidates[best])) best = k;
      }
      return best;
    };
    size_t k = argmin([&](const auto& u) { return OpponentSum(i, u, ones); });
    out.min_sum = OpponentSum(i, candidates[k], ones);
    k = argmin([&](const auto& u) { return OpponentSum(i, u, ctx_.weights); });
    out.min_weighted_sum = OpponentSum(i, candidates[k], ctx_.weights);
    out.weighted_sum_witness = witness_for(where[k], candidates[k]);
    out.min_opponent.assign(n, Scalar(0));
    out.opponent_witness.resize(n);
    for (PlayerId j = 0; j < n; ++j) {
      if (j == i) continue;
      k = argmin([&](const auto& u) { return u[j]; });
      out.min_opponent[j] = candidates[k][j];
      out.opponent_witness[j] = witness_for(where[k], candidates[k]);
    }
    out.secure = SecureFormulationA(i, ctx_.payoffs, candidates);
    out.formulations_agree =
        out.secure == SecureFormulationB(i, ctx_.payoffs, candidates);
    for (size_t c = 0; c < candidates.size(); ++c) {
      if (HurtsWithoutHelping(i, ctx_.payoffs, candidates[c])) {
        out.secure_witness = witness_for(where[c], candidates[c]);
        break;
      }
    }
    return out;
  }

  // Reach `target` from the root, then go around a cycle through it forever.
  FiniteMemoryStrategy PathStrategy(const DeviationGraph& g,
                                    const std::vector<std::vector<int>>& edges,
                                    int target, PlayerId owner) const {
    // (node, action index) steps from `from` to `to`; at least one step
    // when `cycle` is set.
    auto bfs = [&](int from, int to, bool cycle) {
      std::vector<std::pair<int, int>> steps;
      if (!cycle && from == to) return steps;
      std::vector<std::pair<int, int>> parent(g.size(), {-1, -1});
      std::vector<bool> seen(g.size(), false);
      seen[from] = !cycle;
      std::deque<int> queue{from};
      while (!queue.empty() && !seen[to]) {
        const int x = queue.front();
        queue.pop_front();
        for (int k = 0; k < static_cast<int>(edges[x].size()) && !seen[to]; ++k) {
          const int y = edges[x][k];
          if (seen[y]) continue;
          seen[y] = true;
          parent[y] = {x, k};
          queue.push_back(y);
        }
      }
      int y = to;
      do {
        const auto [x, k] = parent[y];
        steps.emplace_back(x, k);
        y = x;
      } while (y != from);
      std::reverse(steps.begin(), steps.end());
      return steps;
    };
    std::vector<std::pair<int, int>> steps = bfs(0, target, false);
    const size_t loop_start = steps.size();
    std::vector<std::pair<int, int>> cycle = bfs(target, target, true);
    steps.insert(steps.end(), cycle.begin(), cycle.end());
    return SequenceStrategy(ctx_.arena, g, steps, loop_start, owner);
  }

  const Context& ctx_;
};

CheckResult Failed(const Witness& w) { return CheckResult{false, true, w}; }

EquilibriumReport BuildReport(const Context& ctx) {
  const int n = ctx.arena.NumPlayers();
  Analyzer analyzer(ctx);
  std::vector<PlayerAnalysis> analyses;
  for (PlayerId i = 0; i < n; ++i) analyses.push_back(analyzer.Analyze(i));
  EquilibriumReport report;
  report.payoffs = ctx.payoffs;
  for (PlayerId i = 0; i < n && report.nash.holds; ++i) {
    if (analyses[i].best > ctx.payoffs[i]) {
      report.nash = Failed(analyses[i].best_witness);
    }
  }
  if (!report.nash.holds) {
    report.secure = report.sum_secure = report.strongly_secure = report.nash;
  } else {
    for (PlayerId i = 0; i < n; ++i) {
      const PlayerAnalysis& a = analyses[i];
      report.secure_formulations_agree =
          report.secure_formulations_agree && a.formulations_agree;
      if (report.secure.holds) {
        if (!a.secure) {
          report.secure = Failed(*a.secure_witness);
        } else if (!a.secure_exact) {
          report.secure.exact = false;
        }
      }
      if (report.sum_secure.holds &&
          a.min_weighted_sum < OpponentSum(i, ctx.payoffs, ctx.weights)) {
        report.sum_secure = Failed(a.weighted_sum_witness);
      }
      for (PlayerId j = 0; j < n && report.strongly_secure.holds; ++j) {
        if (j != i && a.min_opponent[j] < ctx.payoffs[j]) {
          report.strongly_secure = Failed(*a.opponent_witness[j]);
        }
      }
    }
  }
  for (const CheckResult* check : {&report.nash, &report.secure,
                                   &report.sum_secure,
                                   &report.strongly_secure}) {
    if (!check->witness) continue;
    const Witness& w = *check->witness;
    std::vector<Scalar> replay = ExpectedPayoffs(
        ctx.arena, ctx.specs, WithDeviation(ctx.arena, ctx.profile, w.strategy));
    report.witnesses_replayed = report.witnesses_replayed && replay == w.payoffs;
  }
  return report;
}

}  // namespace

BestResponseResult BestResponse(const Arena& arena,
                                std::span<const PayoffSpec> specs,
                                const StrategyProfile& profile,
                                PlayerId player) {
  Context ctx(arena, specs, profile, {});
  PlayerAnalysis a = Analyzer(ctx).Analyze(player);
  return {a.best, a.best_witness};
}

LexiBestResponseResult LexiBestResponse(const Arena& arena,
                                        std::span<const PayoffSpec> specs,
                                        const StrategyProfile& profile,
                                        PlayerId player,
                                        std::span<const Scalar> weights) {
  Context ctx(arena, specs, profile, weights);
  PlayerAnalysis a = Analyzer(ctx).Analyze(player);
  if (ctx.mode == Mode::kFiniteRange && a.best != ctx.payoffs[player]) {
    // The second level ranges over deviations worth the best response.
    std::vector<Scalar> shifted = ctx.payoffs;
    shifted[player] = a.best;
    Context anchored = ctx;
    anchored.payoffs = shifted;
    a = Analyzer(anchored).Analyze(player);
  }
  return {a.best, a.min_weighted_sum, a.weighted_sum_witness};
}

CheckResult CheckNash(const Arena& arena, std::span<const PayoffSpec> specs,
                      const StrategyProfile& profile) {
  return Verify(arena, specs, profile).nash;
}

CheckResult CheckSecure(const Arena& arena, std::span<const PayoffSpec> specs,
                        const StrategyProfile& profile) {
  return Verify(arena, specs, profile).secure;
}

CheckResult CheckSumSecure(const Arena& arena,
                           std::span<const PayoffSpec> specs,
                           const StrategyProfile& profile,
                           std::span<const Scalar> weights) {
  return Verify(arena, specs, profile, weights).sum_secure;
}

CheckResult CheckStronglySecure(const Arena& arena,
                                std::span<const PayoffSpec> specs,
                                const StrategyProfile& profile) {
  return Verify(arena, specs, profile).strongly_secure;
}

EquilibriumReport Verify(const Arena& arena, std::span<const PayoffSpec> specs,
                         const StrategyProfile& profile,
                         std::span<const Scalar> weights) {
  Context ctx(arena, specs, profile, weights);
  return BuildReport(ctx);
}

}  // namespace seceq
