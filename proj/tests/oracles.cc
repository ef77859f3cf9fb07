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

#include "oracles.h"

#include <map>
#include <stdexcept>
#include <utility>

namespace seceq::testing {

std::vector<Scalar> DenseSolve(Matrix a, std::vector<Scalar> b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::runtime_error("singular system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Scalar f = a[row][col] / a[col][col];
      for (size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  for (size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

std::vector<Scalar> PositionalDiscounted(const Arena& arena,
                                         const Matrix& rewards,
                                         const Scalar& discount,
                                         const std::vector<ActionId>& choice) {
  const int n = arena.NumStates();
  Matrix a(n, std::vector<Scalar>(n, 0));
  std::vector<Scalar> b(n);
  for (StateId s = 0; s < n; ++s) {
    a[s][s] += 1;
    b[s] = rewards[s][choice[s]];
    for (const auto& [target, prob] : arena.Next(s, choice[s])) {
      a[s][target] -= discount * prob;
    }
  }
  return DenseSolve(a, b);
}

namespace {

// Advances a mixed-radix counter; false once it wraps.
bool Increment(std::vector<ActionId>& digits, const std::vector<int>& radix,
               const std::vector<StateId>& positions) {
  for (StateId s : positions) {
    if (++digits[s] < radix[s]) return true;
    digits[s] = 0;
  }
  return false;
}

}  // namespace

std::vector<Scalar> BruteDiscountedValue(const Arena& arena,
                                         const Matrix& rewards,
                                         const Scalar& discount,
                                         PlayerId player) {
  const int n = arena.NumStates();
  std::vector<int> radix(n);
  std::vector<StateId> mine, theirs;
  for (StateId s = 0; s < n; ++s) {
    radix[s] = arena.NumActions(s);
    (arena.Controller(s) == player ? mine : theirs).push_back(s);
  }
  std::vector<Scalar> best(n);
  bool first_max = true;
  std::vector<ActionId> choice(n, 0);
  do {
    std::vector<Scalar> worst(n);
    bool first_min = true;
    for (StateId s : theirs) choice[s] = 0;
    do {
      const std::vector<Scalar> v =
          PositionalDiscounted(arena, rewards, discount, choice);
      for (StateId s = 0; s < n; ++s) {
        if (first_min || v[s] < worst[s]) worst[s] = v[s];
      }
      first_min = false;
    } while (Increment(choice, radix, theirs));
    for (StateId s = 0; s < n; ++s) {
      if (first_max || worst[s] > best[s]) best[s] = worst[s];
    }
    first_max = false;
  } while (Increment(choice, radix, mine));
  return best;
}

Scalar TreeValue(const Arena& arena, const std::vector<Matrix>& rewards,
                 int horizon, PlayerId player, StateId s) {
  if (horizon == 0) return 0;
  const int t = static_cast<int>(rewards.size()) - horizon;
  Scalar best;
  for (ActionId a = 0; a < arena.NumActions(s); ++a) {
    Scalar q = rewards[t][s][a];
    for (const auto& [target, prob] : arena.Next(s, a)) {
      q += prob * TreeValue(arena, rewards, horizon - 1, player, target);
    }
    const bool better = arena.Controller(s) == player ? q > best : q < best;
    if (a == 0 || better) best = q;
  }
  return best;
}

namespace {

struct Point {
  StateId state;
  unsigned mask;
  bool operator<(const Point& o) const {
    return std::pair(state, mask) < std::pair(o.state, o.mask);
  }
};

unsigned MaskOf(const ReachedSet& spec, StateId s) {
  unsigned mask = 0;
  for (size_t k = 0; k < spec.targets.size(); ++k) {
    for (StateId t : spec.targets[k]) {
      if (t == s) mask |= 1u << k;
    }
  }
  return mask;
}

}  // namespace

bool BruteReachedSetValue(const Arena& arena, const ReachedSet& spec,
                          PlayerId player, long max_profiles, Scalar* value) {
  // Every (state, mask) pair reachable under some play.
  std::map<Point, int> index;
  std::vector<Point> points;
  std::vector<Point> stack = {{arena.Initial(), MaskOf(spec, arena.Initial())}};
  while (!stack.empty()) {
    const Point p = stack.back();
    stack.pop_back();
    if (index.count(p)) continue;
    index[p] = static_cast<int>(points.size());
    points.push_back(p);
    for (ActionId a = 0; a < arena.NumActions(p.state); ++a) {
      const StateId next = arena.Next(p.state, a).front().target;
      stack.push_back({next, p.mask | MaskOf(spec, next)});
    }
  }
  const int n = static_cast<int>(points.size());
  std::vector<int> radix(n);
  std::vector<StateId> mine, theirs;  // indices into points
  long total = 1;
  for (int k = 0; k < n; ++k) {
    radix[k] = arena.NumActions(points[k].state);
    total *= radix[k];
    if (total > max_profiles) return false;
    (arena.Controller(points[k].state) == player ? mine : theirs).push_back(k);
  }
  auto play = [&](const std::vector<ActionId>& choice) {
    std::map<int, bool> seen;
    int k = 0;
    while (!seen[k]) {
      seen[k] = true;
      const Point p = points[k];
      const StateId next = arena.Next(p.state, choice[k]).front().target;
      k = index.at({next, p.mask | MaskOf(spec, next)});
    }
    return spec.values[points[k].mask];
  };
  Scalar best;
  bool first_max = true;
  std::vector<ActionId> choice(n, 0);
  do {
    Scalar worst;
    bool first_min = true;
    for (int k : theirs) choice[k] = 0;
    do {
      const Scalar v = play(choice);
      if (first_min || v < worst) worst = v;
      first_min = false;
    } while (Increment(choice, radix, theirs));
    if (first_max || worst > best) best = worst;
    first_max = false;
  } while (Increment(choice, radix, mine));
  *value = best;
  return true;
}

Scalar UnrolledDiscounted(const std::vector<Scalar>& prefix,
                          const std::vector<Scalar>& cycle,
                          const Scalar& discount, int periods) {
  Scalar total = 0, weight = 1;
  for (const Scalar& r : prefix) {
    total += weight * r;
    weight *= discount;
  }
  for (int k = 0; k < periods; ++k) {
    for (const Scalar& r : cycle) {
      total += weight * r;
      weight *= discount;
    }
  }
  return total;
}

}  // namespace seceq::testing
