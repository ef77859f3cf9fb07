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

#ifndef SECEQ_DELTA_H_
#define SECEQ_DELTA_H_

#include <optional>
#include <span>
#include <vector>

#include "seceq/arena.h"
#include "seceq/payoff.h"
#include "seceq/product.h"
#include "seceq/strategy.h"
#include "seceq/verify.h"

namespace seceq {

struct DeltaParams {
  std::vector<Scalar> range;  // pooled payoff range M, ascending
  Scalar r;                   // max |m|
  Scalar d;                   // smallest gap between distinct values
  Scalar delta;               // d / (2 |N| R)
  int num_players = 0;
};

// Throws InputError if the pooled range has fewer than two values.
DeltaParams ComputeDelta(std::vector<Scalar> range, int num_players);
DeltaParams ComputeDelta(std::span<const PayoffSpec> specs, int num_players);

// u_i - delta * sum_{j != i} u_j for every i.
std::vector<Scalar> TransformVector(std::span<const Scalar> u,
                                    const Scalar& delta);

// True iff u_i < u'_i implies u^delta_i < u'^delta_i for every pair of
// vectors in M^N and every i (and hence the contrapositive form as well).
bool OrderPreserved(const DeltaParams& params);

// Payoffs as functions of the stable configurations of the pooled tracker
// that occur in the product with the arena.
struct TransformedPayoffs {
  std::vector<MemoryKey> configurations;
  std::vector<std::vector<Scalar>> original;     // [config][player]
  std::vector<std::vector<Scalar>> transformed;  // [config][player]
};

TransformedPayoffs TransformPayoffs(const Arena& arena,
                                    std::span<const PayoffSpec> specs,
                                    const Scalar& delta);

// Nash equilibrium of the game with payoffs u^delta: everyone follows his
// own optimal strategy in G^delta_i until the first deviation, after which
// the deviator's opponents punish him forever. `delta` 0 leaves the payoffs
// unchanged.
struct DeltaNash {
  ProductArena product;
  Transducer transducer;
  std::vector<std::vector<ActionId>> choices;  // [player][product state]
  StrategyProfile on_product;
  StrategyProfile profile;  // on the input arena
};

DeltaNash ConstructNashInTransformed(const Arena& arena,
                                     std::span<const PayoffSpec> specs,
                                     const Scalar& delta);

struct DeltaResult {
  std::optional<DeltaParams> params;  // empty for a constant payoff range
  DeltaNash nash;
  StrategyProfile profile;
  EquilibriumReport report;
};

// Deterministic arena, reached-set and capped hitting-time payoffs.
DeltaResult ConstructSecureEquilibriumDet(const Arena& arena,
                                          std::span<const PayoffSpec> specs);

}  // namespace seceq

#endif  // SECEQ_DELTA_H_
