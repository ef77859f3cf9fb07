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

#ifndef SECEQ_ORACLE_H_
#define SECEQ_ORACLE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seceq/arena.h"
#include "seceq/payoff.h"
#include "seceq/product.h"
#include "seceq/strategy.h"

namespace seceq {

// Strategy class enumerated by the oracle:
//   discounted payoffs: positional strategies on the arena;
//   reached-set / hitting-time payoffs (deterministic arena): positional
//     strategies on the product with the payoff tracker;
//   finite-horizon payoffs: all strategies, as decisions at every history
//     shorter than the horizon.
enum class StrategyClass { kPositionalArena, kPositionalProduct, kTree };

std::string StrategyClassName(StrategyClass c);

struct OracleBounds {
  long max_profiles = 1000000;
};

struct DecisionPoint {
  StateId state = 0;
  std::string description;  // state name, product state or history
};

struct OracleProfile {
  long index = 0;
  std::vector<ActionId> decisions;  // one per decision point
  std::vector<Scalar> payoffs;
  bool nash = false;
  bool secure = false;
  bool sum_secure = false;
  bool strongly_secure = false;
};

struct OracleResult {
  StrategyClass strategy_class = StrategyClass::kPositionalArena;
  std::vector<DecisionPoint> points;
  long num_profiles = 0;
  long num_nash = 0;
  std::vector<OracleProfile> secure;  // ascending index
  // Profiles whose flags break strongly => sum => secure => nash, or, with
  // two players, secure <=> strongly secure.
  long hierarchy_violations = 0;
};

// Exhaustive enumeration; deviations range over the same class. Throws
// InputError if the class has more than bounds.max_profiles profiles.
OracleResult OracleEnumerate(const Arena& arena,
                             std::span<const PayoffSpec> specs,
                             const OracleBounds& bounds = {});

// Index of `profile` in the finite-horizon tree class, i.e. the decisions it
// takes at every history shorter than the horizon.
long TreeProfileIndex(const Arena& arena, std::span<const PayoffSpec> specs,
                      const StrategyProfile& profile);

// Whether the tree-class profile equivalent to `profile` is among the
// oracle's secure equilibria.
bool OracleContains(const OracleResult& result, const Arena& arena,
                    std::span<const PayoffSpec> specs,
                    const StrategyProfile& profile);

}  // namespace seceq

#endif  // SECEQ_ORACLE_H_
