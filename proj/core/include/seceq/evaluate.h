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

#ifndef SECEQ_EVALUATE_H_
#define SECEQ_EVALUATE_H_

#include <span>
#include <vector>

#include "seceq/arena.h"
#include "seceq/payoff.h"
#include "seceq/scalar.h"
#include "seceq/strategy.h"

namespace seceq {

// Exact expected payoff of every player under the profile, computed on the
// Markov chain over (state, payoff memory, profile memory).
std::vector<Scalar> ExpectedPayoffs(const Arena& arena,
                                    std::span<const PayoffSpec> specs,
                                    const StrategyProfile& profile);

// The play of a profile on a deterministic arena. Throws InputError if the
// arena has a random move.
Lasso InducedLasso(const Arena& arena, const StrategyProfile& profile);

}  // namespace seceq

#endif  // SECEQ_EVALUATE_H_
