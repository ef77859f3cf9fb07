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

// Brute-force reference solvers for the tests. They share no code with the
// library beyond the Arena and Scalar types.

#ifndef SECEQ_TESTS_ORACLES_H_
#define SECEQ_TESTS_ORACLES_H_

#include <vector>

#include "seceq/arena.h"
#include "seceq/payoff.h"
#include "seceq/scalar.h"

namespace seceq::testing {

using Matrix = std::vector<std::vector<Scalar>>;

// Gauss-Jordan with exact pivots. `a` must be nonsingular.
std::vector<Scalar> DenseSolve(Matrix a, std::vector<Scalar> b);

// Discounted values of every state under a positional profile.
std::vector<Scalar> PositionalDiscounted(const Arena& arena,
                                         const Matrix& rewards,
                                         const Scalar& discount,
                                         const std::vector<ActionId>& choice);

// max over `player`'s positional strategies of min over the others', per
// state, by enumerating every positional profile.
std::vector<Scalar> BruteDiscountedValue(const Arena& arena,
                                         const Matrix& rewards,
                                         const Scalar& discount,
                                         PlayerId player);

// Zero-sum value of the finite-horizon game from (s, t = 0), by recursion
// over the unrolled tree.
Scalar TreeValue(const Arena& arena,
                 const std::vector<Matrix>& rewards,  // [t][s][a]
                 int horizon, PlayerId player, StateId s);

// Reached-set value from the initial state of a deterministic arena, by
// enumerating positional strategies on (state, visited-target mask) and
// simulating every play. Returns false if there are more than
// `max_profiles` profiles.
bool BruteReachedSetValue(const Arena& arena, const ReachedSet& spec,
                          PlayerId player, long max_profiles, Scalar* value);

// Discounted sum of a lasso unrolled for `periods` cycle repetitions.
Scalar UnrolledDiscounted(const std::vector<Scalar>& prefix,
                          const std::vector<Scalar>& cycle,
                          const Scalar& discount, int periods);

}  // namespace seceq::testing

#endif  // SECEQ_TESTS_ORACLES_H_
