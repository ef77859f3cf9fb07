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

#include "seceq/delta.h"

#include <algorithm>
#include <set>

#include "seceq/errors.h"
#include "seceq/zerosum.h"

namespace seceq {

DeltaParams ComputeDelta(std::vector<Scalar> range, int num_players) {
  std::sort(range.begin(), range.end());
  range.erase(std::unique(range.begin(), range.end()), range.end());
  if (range.size() < 2) {
    throw InputError("payoff range has fewer than two values; the game is trivial");
  }
  if (num_players < 1) throw InputError("need at least one player");
  DeltaParams params;
  params.range = range;
  params.num_players = num_players;
  params.r = std::max(abs(range.front()), abs(range.back()));
  params.d = range[1] - range[0];
  for (size_t k = 2; k < range.size(); ++k) {
    params.d = std::min(params.d, Scalar(range[k] - range[k - 1]));
  }
  params.delta = params.d / (2 * num_players * params.r);
  return params;
}

DeltaParams ComputeDelta(std::span<const PayoffSpec> specs, int num_players) {
  std::vector<Scalar> range;
  for (const PayoffSpec& spec : specs) {
    if (!IsFiniteRange(spec)) {
      throw UnsupportedError("the delta transformation needs finite-range payoffs");
    }
    for (const Scalar& v : PayoffRange(spec)) range.push_back(v);
  }
  return ComputeDelta(std::move(range), num_players);
}

std::vector<Scalar> TransformVector(std::span<const Scalar> u,
                                    const Scalar& delta) {
  Scalar total = 0;
  for (const Scalar& x : u) total += x;
  std::vector<Scalar> out;
  for (const Scalar& x : u) out.push_back(x - delta * (total - x));
  return out;
}

bool OrderPreserved(const DeltaParams& params) {
  const int n = params.num_players;
  const int m = static_cast<int>(params.range.size());
  long count = 1;
  for (int i = 0; i < n; ++i) count *= m;
  std::vector<std::vector<Scalar>> vectors, transformed;
  for (long code = 0; code < count; ++code) {
    std::vector<Scalar> u;
    long rest = code;
    for (int i = 0; i < n; ++i, rest /= m) u.push_back(params.range[rest % m]);
    transformed.push_back(TransformVector(u, params.delta));
    vectors.push_back(std::move(u));
  }
  for (long a = 0; a < count; ++a) {
    for (long b = 0; b < count; ++b) {
      for (int i = 0; i < n; ++i) {
        if (vectors[a][i] < vectors[b][i] &&
            !(transformed[a][i] < transformed[b][i])) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

void RequireDeterministicFiniteRange(const Arena& arena,
                                     std::span<const PayoffSpec> specs) {
  RequireValidArena(arena);
  ValidateSpecs(arena, specs);
  if (!arena.IsDeterministic()) {
    throw UnsupportedError("the delta engine needs a deterministic arena");
  }
  if (!AllFiniteRange(specs)) {
    throw UnsupportedError(
        "the delta engine needs reached-set or hitting-time payoffs");
  }
}

}  // namespace

TransformedPayoffs TransformPayoffs(const Arena& arena,
                                    std::span<const PayoffSpec> specs,
                                    const Scalar& delta) {
  RequireDeterministicFiniteRange(arena, specs);
  PayoffTracker tracker(arena, specs);
  ProductArena product = BuildProduct(arena, tracker.AsTransducer());
  std::set<MemoryKey> stable;
  for (MemoryKey key : product.memory) {
    if (tracker.Stable(key)) stable.insert(key);
  }
  TransformedPayoffs out;
  for (MemoryKey key : stable) {
    std::vector<Scalar> u;
    for (PlayerId p = 0; p < arena.NumPlayers(); ++p) {
      u.push_back(tracker.LimitPayoff(p, key));
    }
    out.configurations.push_back(key);
    out.transformed.push_back(TransformVector(u, delta));
    out.original.push_back(std::move(u));
  }
  return out;
}

namespace {

// Product states from which no payoff can change any more: every target set
// has been reached and every hitting-time player has hit or is past the cap.
bool Settled(const PayoffTracker& tracker, MemoryKey key) {
  const std::uint32_t all = (std::uint32_t{1} << tracker.Labels().size()) - 1;
  if (tracker.Reached(key) != all) return false;
  for (int j = 0; j < tracker.NumCapped(); ++j) {
    if (tracker.Outcome(key, j) == 0 && tracker.Clock(key) < tracker.Cap(j)) {
      return false;
    }
  }
  return true;
}

bool LateHit(const PayoffTracker& tracker, MemoryKey key, StateId s) {
  for (int j = 0; j < tracker.NumCapped(); ++j) {
    const int outcome = tracker.Outcome(key, j);
    const bool missed = outcome == PayoffTracker::kMissed ||
                        (outcome == 0 && tracker.Clock(key) >= tracker.Cap(j));
    if (missed && tracker.InTarget(j, s)) return true;
  }
  return false;
}

// In the settled region every choice is payoff-irrelevant. Where the play
// can stay out of the targets of players who missed their cap, make every
// strategy do so, so that realized hitting times never exceed the cap.
void AvoidLateHits(const PayoffTracker& tracker, const ProductArena& product,
                   std::vector<std::vector<ActionId>>& choices) {
  const Arena& game = product.arena;
  std::vector<bool> safe(game.NumStates());
  for (StateId x = 0; x < game.NumStates(); ++x) {
    const MemoryKey key = product.memory[x];
    safe[x] = Settled(tracker, key) &&
              !LateHit(tracker, key, product.base_state[x]);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId x = 0; x < game.NumStates(); ++x) {
      if (!safe[x]) continue;
      bool exit = false;
      for (ActionId a = 0; a < game.NumActions(x) && !exit; ++a) {
        exit = safe[game.Next(x, a).front().target];
      }
      if (!exit) {
        safe[x] = false;
        changed = true;
      }
    }
  }
  for (StateId x = 0; x < game.NumStates(); ++x) {
    if (!safe[x]) continue;
    ActionId a = 0;
    while (!safe[game.Next(x, a).front().target]) ++a;
    for (auto& choice : choices) choice[x] = a;
  }
}

}  // namespace

DeltaNash ConstructNashInTransformed(const Arena& arena,
                                     std::span<const PayoffSpec> specs,
                                     const Scalar& delta) {
  RequireDeterministicFiniteRange(arena, specs);
  const int n = arena.NumPlayers();
  PayoffTracker tracker(arena, specs);
  DeltaNash out;
  out.transducer = tracker.AsTransducer();
  out.product = BuildProduct(arena, out.transducer);
  const Arena& game = out.product.arena;
  std::vector<std::vector<Scalar>> payoff(n);
  for (MemoryKey key : out.product.memory) {
    std::vector<Scalar> u;
    for (PlayerId p = 0; p < n; ++p) u.push_back(tracker.LimitPayoff(p, key));
    std::vector<Scalar> t = TransformVector(u, delta);
    for (PlayerId p = 0; p < n; ++p) payoff[p].push_back(t[p]);
  }
  for (PlayerId p = 0; p < n; ++p) {
    out.choices.push_back(SolveLimitGame(game, p, payoff[p]).choice);
  }
  AvoidLateHits(tracker, out.product, out.choices);

  // Memory: 0 before any deviation, 1 + i once player i deviated.
  StrategyProfile& profile = out.on_product;
  profile.memory.size = 1 + n;
  profile.memory.initial = 0;
  profile.memory.num_edges = game.NumEdges();
  profile.memory.next.assign(
      static_cast<size_t>(profile.memory.size) * game.NumEdges(), 0);
  profile.choice.assign(profile.memory.size,
                        std::vector<ActionId>(game.NumStates(), 0));
  for (int m = 0; m <= n; ++m) {
    for (StateId x = 0; x < game.NumStates(); ++x) {
      const PlayerId owner = game.Controller(x);
      profile.choice[m][x] = m == 0 ? out.choices[owner][x] : out.choices[m - 1][x];
      for (ActionId a = 0; a < game.NumActions(x); ++a) {
        int next = m;
        if (m == 0 && a != out.choices[owner][x]) next = 1 + owner;
        profile.memory.SetNext(m, game.EdgeIndex(x, a, 0), next);
      }
    }
  }
  out.profile = LiftProfile(arena, out.product, out.transducer, profile);
  return out;
}

DeltaResult ConstructSecureEquilibriumDet(const Arena& arena,
                                          std::span<const PayoffSpec> specs) {
  RequireDeterministicFiniteRange(arena, specs);
  DeltaResult out;
  std::vector<Scalar> range;
  for (const PayoffSpec& spec : specs) {
    for (const Scalar& v : PayoffRange(spec)) range.push_back(v);
  }
  std::sort(range.begin(), range.end());
  range.erase(std::unique(range.begin(), range.end()), range.end());
  Scalar delta = 0;
  if (range.size() >= 2) {
    out.params = ComputeDelta(range, arena.NumPlayers());
    delta = out.params->delta;
  }
  out.nash = ConstructNashInTransformed(arena, specs, delta);
  out.profile = out.nash.profile;
  out.report = Verify(arena, specs, out.profile);
  return out;
}

}  // namespace seceq
