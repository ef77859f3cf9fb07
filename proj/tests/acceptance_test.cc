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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "seceq/delta.h"
#include "seceq/eliminate.h"
#include "seceq/evaluate.h"
#include "seceq/oracle.h"
#include "seceq/secure.h"
#include "seceq/verify.h"
#include "seceq/zerosum.h"
#include "test_util.h"

namespace seceq {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Every report the suite looks at, for the hierarchy criterion.
struct Ledger {
  long reports = 0;
  long violations = 0;
  long two_player_mismatch = 0;
  long oracle_profiles = 0;
  long inexact = 0;  // verdicts from a bounded search
  std::string first_problem;

  void Add(const EquilibriumReport& report, int num_players) {
    ++reports;
    for (const CheckResult* c : {&report.nash, &report.secure, &report.sum_secure,
                                 &report.strongly_secure}) {
      inexact += !c->exact;
    }
    const std::string v = HierarchyViolation(report, num_players);
    if (!v.empty()) {
      ++violations;
      if (first_problem.empty()) first_problem = v;
    }
    if (num_players == 2 && report.secure.holds != report.strongly_secure.holds) {
      ++two_player_mismatch;
      if (first_problem.empty()) first_problem = "2 players: secure != strongly";
    }
  }
  void Add(const OracleResult& result, int num_players) {
    oracle_profiles += result.num_profiles;
    violations += result.hierarchy_violations;
    if (num_players == 2) {
      for (const OracleProfile& p : result.secure) {
        if (!p.strongly_secure) ++two_player_mismatch;
      }
    }
  }
};

Ledger ledger;

void Fail(Outcome& out, const std::string& why) {
  if (out.pass) out.detail = why;
  out.pass = false;
}

Outcome ThreePlayerExample() {
  Outcome out;
  const GameDocument doc = testing::LoadExample("three_player.json");
  const OracleResult oracle = OracleEnumerate(doc.arena, doc.specs);
  ledger.Add(oracle, 3);
  std::vector<std::vector<Scalar>> payoffs;
  for (const OracleProfile& p : oracle.secure) payoffs.push_back(p.payoffs);
  std::sort(payoffs.begin(), payoffs.end());
  if (payoffs != std::vector<std::vector<Scalar>>{{1, 0, 2}, {1, 2, 0}}) {
    Fail(out, "oracle secure set has " + std::to_string(payoffs.size()) + " profiles");
  }
  for (ActionId a : {0, 1}) {
    const StrategyProfile profile = PositionalProfile(doc.arena, {a, 0, 0});
    const EquilibriumReport report = Verify(doc.arena, doc.specs, profile);
    ledger.Add(report, 3);
    if (CheckStronglySecure(doc.arena, doc.specs, profile).holds) {
      Fail(out, "strongly secure holds for action " + std::to_string(a));
    }
    if (!CheckSecure(doc.arena, doc.specs, profile).holds ||
        !CheckSumSecure(doc.arena, doc.specs, profile).holds) {
      Fail(out, "secure or sum-secure fails for action " + std::to_string(a));
    }
  }
  if (out.pass) out.detail = "2 secure equilibria (1, 0, 2), (1, 2, 0); neither strongly secure";
  return out;
}

GameDocument DiscountedInstance(std::uint64_t seed) {
  GeneratorConfig config;
  config.seed = 1000 + seed;
  config.family = Family::kDiscounted;
  config.num_players = 1 + seed % 3;
  config.num_states = 1 + seed % 8;
  config.max_actions = 1 + (seed / 3) % 3;
  config.deterministic = seed % 2 == 0;
  config.discount = Scalar(1, 2);
  config.reward_denominator = 4;
  return Generate(config);
}

std::vector<SecureResult> discounted_results;
std::vector<GameDocument> discounted_games;

Outcome EliminationEngineSoundness() {
  Outcome out;
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    discounted_games.push_back(DiscountedInstance(seed));
    const GameDocument& doc = discounted_games.back();
    discounted_results.push_back(ConstructSecureEquilibrium(doc.arena, doc.specs));
    const EquilibriumReport& report = discounted_results.back().report;
    ledger.Add(report, doc.arena.NumPlayers());
    if (report.nash.holds && report.sum_secure.holds) {
      ++passed;
    } else {
      Fail(out, "instance " + std::to_string(seed) + " fails");
    }
  }
  out.detail = std::to_string(passed) + "/200 Nash and sum-secure" +
               (out.pass ? "" : "; " + out.detail);
  return out;
}

Outcome EliminationInvariants() {
  Outcome out;
  long levels_checked = 0;
  for (size_t k = 0; k < discounted_results.size(); ++k) {
    const RewardGame& game = discounted_results[k].game;
    const EliminationTrace& trace = discounted_results[k].trace;
    const std::string tag = "instance " + std::to_string(k);
    int bound = 1;
    for (StateId s = 0; s < game.arena.NumStates(); ++s) {
      bound += game.arena.NumActions(s) - 1;
    }
    if (static_cast<int>(trace.levels.size()) > bound) Fail(out, tag + ": too many levels");
    for (size_t l = 0; l + 1 < trace.levels.size(); ++l) {
      ++levels_checked;
      for (PlayerId p = 0; p < game.NumPlayers(); ++p) {
        for (StateId s = 0; s < game.arena.NumStates(); ++s) {
          if (trace.levels[l + 1].states[s] &&
              trace.levels[l].Values(p).state_values[s] >
                  trace.levels[l + 1].Values(p).state_values[s]) {
            Fail(out, tag + ": value decreased");
          }
        }
      }
    }
    const EliminationLevel& last = trace.Fixpoint();
    for (StateId s = 0; s < game.arena.NumStates(); ++s) {
      if (!last.states[s]) continue;
      const ValueTable& v = last.Values(game.arena.Controller(s));
      for (ActionId a = 0; a < game.arena.NumActions(s); ++a) {
        if (last.actions[s][a] && v.action_values[s][a] != v.state_values[s]) {
          Fail(out, tag + ": surviving action not optimal");
        }
      }
    }
  }
  if (out.pass) {
    out.detail = "200 traces, " + std::to_string(levels_checked) +
                 " level transitions monotone, fixpoints exact, level bound met";
  }
  return out;
}

Outcome FiniteHorizonOracle() {
  Outcome out;
  int contained = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorConfig config;
    config.seed = 2000 + seed;
    config.family = Family::kFiniteHorizon;
    config.num_players = 1 + seed % 3;
    config.num_states = 2 + seed % 3;
    config.max_actions = 2;
    config.horizon = 1 + (seed / 3) % 3;
    config.deterministic = true;
    const GameDocument doc = Generate(config);
    const SecureResult result = ConstructSecureEquilibrium(doc.arena, doc.specs);
    ledger.Add(result.report, doc.arena.NumPlayers());
    const OracleResult oracle = OracleEnumerate(doc.arena, doc.specs);
    ledger.Add(oracle, doc.arena.NumPlayers());
    if (OracleContains(oracle, doc.arena, doc.specs, result.profile)) {
      ++contained;
    } else {
      Fail(out, "instance " + std::to_string(seed) + " not in the oracle set");
    }
  }
  out.detail = std::to_string(contained) + "/50 constructed profiles in the oracle set" +
               (out.pass ? "" : "; " + out.detail);
  return out;
}

Outcome DeltaPipeline() {
  Outcome out;
  int passed = 0;
  long pairs = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GeneratorConfig config;
    config.seed = 3000 + seed;
    config.family = Family::kReachedSet;
    config.num_players = 1 + seed % 3;
    config.num_states = 1 + seed % 8;
    config.max_actions = 1 + (seed / 2) % 3;
    config.num_labels = 1 + (seed / 5) % 3;
    config.deterministic = true;
    const GameDocument doc = Generate(config);
    const DeltaResult result = ConstructSecureEquilibriumDet(doc.arena, doc.specs);
    ledger.Add(result.report, doc.arena.NumPlayers());
    bool ok = result.report.nash.holds && result.report.secure.holds;
    if (result.params) {
      ok &= OrderPreserved(*result.params);
      long m = 1;
      for (int i = 0; i < doc.arena.NumPlayers(); ++i) m *= result.params->range.size();
      pairs += m * m;
    }
    if (ok) {
      ++passed;
    } else {
      Fail(out, "instance " + std::to_string(seed) + " fails");
    }
  }
  out.detail = std::to_string(passed) + "/200 Nash and secure, order preserved over " +
               std::to_string(pairs) + " vector pairs" + (out.pass ? "" : "; " + out.detail);
  return out;
}

Outcome HittingBound() {
  Outcome out;
  long hits = 0;
  int equilibria = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorConfig config;
    config.seed = 4000 + seed;
    config.family = Family::kCappedHitting;
    config.num_players = 1 + seed % 3;
    config.num_states = 2 + seed % 5;
    config.max_actions = 2;
    config.deterministic = true;
    const GameDocument doc = Generate(config);
    const int bound = 2 * doc.arena.NumPlayers() * doc.arena.NumStates();
    const DeltaResult result = ConstructSecureEquilibriumDet(doc.arena, doc.specs);
    ledger.Add(result.report, doc.arena.NumPlayers());
    equilibria += result.report.nash.holds && result.report.secure.holds;
    const Lasso lasso = InducedLasso(doc.arena, result.profile);
    for (const PayoffSpec& spec : doc.specs) {
      const auto& c = std::get<CappedHitting>(spec);
      if (c.cap != bound) Fail(out, "generator cap differs from 2|N||S|");
      const long t = FirstHittingTime(lasso, c.target);
      if (t < 0) continue;
      ++hits;
      if (t > bound) {
        Fail(out, "instance " + std::to_string(seed) + ": hit at " +
                      std::to_string(t) + " > " + std::to_string(bound));
      }
    }
  }
  if (equilibria != 50) Fail(out, std::to_string(equilibria) + "/50 secure equilibria");
  if (out.pass) {
    out.detail = std::to_string(hits) + " finite hitting times, all within 2|N||S|";
  }
  return out;
}

Outcome Hierarchy() {
  // A last batch of arbitrary (mostly non-equilibrium) profiles.
  std::mt19937 rng(99);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const bool reach = seed % 2 == 1;
    const GameDocument doc = testing::RandomGame(
        5000 + seed, reach ? Family::kReachedSet : Family::kDiscounted,
        2 + seed % 2, 4, 2, reach || seed % 4 == 0);
    std::vector<ActionId> choice;
    for (StateId s = 0; s < doc.arena.NumStates(); ++s) {
      choice.push_back(rng() % doc.arena.NumActions(s));
    }
    ledger.Add(Verify(doc.arena, doc.specs, PositionalProfile(doc.arena, choice)),
               doc.arena.NumPlayers());
  }
  Outcome out;
  out.pass = ledger.violations == 0 && ledger.two_player_mismatch == 0;
  out.detail = std::to_string(ledger.reports) + " reports and " +
               std::to_string(ledger.oracle_profiles) + " oracle profiles, " +
               std::to_string(ledger.violations) + " hierarchy violations, " +
               std::to_string(ledger.two_player_mismatch) + " two-player mismatches, " +
               std::to_string(ledger.inexact) + " bounded-search verdicts";
  if (!ledger.first_problem.empty()) out.detail += "; " + ledger.first_problem;
  return out;
}

Outcome BruteForceOracles() {
  Outcome out;
  int discounted = 0, reached = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GameDocument doc = testing::RandomGame(
        6000 + seed, Family::kDiscounted, 1 + seed % 3, 2 + seed % 5, 2, seed % 2 == 0);
    bool ok = true;
    for (PlayerId p = 0; p < doc.arena.NumPlayers(); ++p) {
      const Discounted& d = testing::AsDiscounted(doc.specs[p]);
      const auto [table, unused] = SolveDiscounted(doc.arena, d.rewards, d.discount, p);
      ok &= table.state_values ==
            testing::BruteDiscountedValue(doc.arena, d.rewards, d.discount, p);
    }
    if (ok) ++discounted; else Fail(out, "discounted instance " + std::to_string(seed));
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GameDocument doc = testing::RandomGame(
        7000 + seed, Family::kReachedSet, 1 + seed % 2, 2 + seed % 4, 2);
    bool ok = true;
    for (PlayerId p = 0; p < doc.arena.NumPlayers(); ++p) {
      const auto& spec = std::get<ReachedSet>(doc.specs[p]);
      Scalar want;
      if (!testing::BruteReachedSetValue(doc.arena, spec, p, 1L << 22, &want)) {
        Fail(out, "reached-set instance " + std::to_string(seed) + " too large");
        ok = false;
        continue;
      }
      ok &= SolveReachedSet(doc.arena, spec, p).table.state_values[0] == want;
    }
    if (ok) ++reached; else Fail(out, "reached-set instance " + std::to_string(seed));
  }
  out.detail = "discounted " + std::to_string(discounted) + "/50, reached-set " +
               std::to_string(reached) + "/50 match enumeration" +
               (out.pass ? "" : "; " + out.detail);
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace seceq

int main() {
  using namespace seceq;
  const std::vector<Criterion> criteria = {
      {1, "three-player example", 1, ThreePlayerExample},
      {2, "elimination engine soundness", 300, EliminationEngineSoundness},
      {3, "elimination invariants", 300, EliminationInvariants},
      {4, "finite-horizon oracle containment", 600, FiniteHorizonOracle},
      {5, "delta pipeline on reached-set games", 300, DeltaPipeline},
      {6, "capped hitting-time bound", 120, HittingBound},
      {7, "security hierarchy", 1e9, Hierarchy},
      {8, "zero-sum solvers against enumeration", 300, BruteForceOracles},
  };
  int failed = 0;
  double criterion_two_time = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Criterion 3 shares criterion 2's budget.
    if (c.id == 2) criterion_two_time = seconds;
    const double charged = c.id == 3 ? seconds + criterion_two_time : seconds;
    if (charged > c.budget_seconds) {
      out.pass = false;
      out.detail += " (over time budget)";
    }
    std::printf("criterion %d %s: %s (%s; %.2f s)\n", c.id, c.name,
                out.pass ? "PASS" : "FAIL", out.detail.c_str(), seconds);
    std::fflush(stdout);
    failed += !out.pass;
  }
  return failed;
}
