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

#ifndef SECEQ_VERIFY_H_
#define SECEQ_VERIFY_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seceq/arena.h"
#include "seceq/payoff.h"
#include "seceq/scalar.h"
#include "seceq/strategy.h"

namespace seceq {

// A unilateral deviation and the payoffs it produces.
struct Witness {
  PlayerId deviator = 0;
  FiniteMemoryStrategy strategy;
  std::vector<Scalar> payoffs;
};

struct CheckResult {
  bool holds = true;
  // False only when the verdict rests on a bounded search (see README).
  bool exact = true;
  std::optional<Witness> witness;
};

struct EquilibriumReport {
  std::vector<Scalar> payoffs;
  CheckResult nash;
  CheckResult secure;
  CheckResult sum_secure;
  CheckResult strongly_secure;
  // The two textbook formulations of security gave the same verdict.
  bool secure_formulations_agree = true;
  // Every witness reproduced its payoffs through ExpectedPayoffs.
  bool witnesses_replayed = true;
};

struct BestResponseResult {
  Scalar value;
  Witness witness;
};

struct LexiBestResponseResult {
  Scalar value;
  Scalar min_opponent_sum;  // weighted when weights are given
  Witness witness;
};

// Supported payoffs: all discounted, all finite-horizon, or all finite-range
// on a deterministic arena. Throws UnsupportedError otherwise.
BestResponseResult BestResponse(const Arena& arena,
                                std::span<const PayoffSpec> specs,
                                const StrategyProfile& profile,
                                PlayerId player);

// weights: one per player, nonnegative; empty means all ones.
LexiBestResponseResult LexiBestResponse(const Arena& arena,
                                        std::span<const PayoffSpec> specs,
                                        const StrategyProfile& profile,
                                        PlayerId player,
                                        std::span<const Scalar> weights = {});

CheckResult CheckNash(const Arena& arena, std::span<const PayoffSpec> specs,
                      const StrategyProfile& profile);
CheckResult CheckSecure(const Arena& arena, std::span<const PayoffSpec> specs,
                        const StrategyProfile& profile);
CheckResult CheckSumSecure(const Arena& arena,
                           std::span<const PayoffSpec> specs,
                           const StrategyProfile& profile,
                           std::span<const Scalar> weights = {});
CheckResult CheckStronglySecure(const Arena& arena,
                                std::span<const PayoffSpec> specs,
                                const StrategyProfile& profile);

// All four checks at once, sharing the deviation analyses.
EquilibriumReport Verify(const Arena& arena, std::span<const PayoffSpec> specs,
                         const StrategyProfile& profile,
                         std::span<const Scalar> weights = {});

// The two formulations of the security condition for one deviator, applied
// to a set of payoff vectors reachable by equal-value deviations. Both return
// true when the set contains no objectionable deviation.
bool SecureFormulationA(PlayerId deviator, std::span<const Scalar> reference,
                        const std::vector<std::vector<Scalar>>& deviations);
bool SecureFormulationB(PlayerId deviator, std::span<const Scalar> reference,
                        const std::vector<std::vector<Scalar>>& deviations);

// Payoff-vector predicates straight from the definitions.
bool HurtsWithoutHelping(PlayerId deviator, std::span<const Scalar> reference,
                         std::span<const Scalar> deviation);

// Hierarchy strongly => sum => secure => nash on one report; returns the
// violated implication or an empty string.
std::string HierarchyViolation(const EquilibriumReport& report,
                               int num_players);

}  // namespace seceq

#endif  // SECEQ_VERIFY_H_
