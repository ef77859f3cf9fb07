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

#ifndef SECEQ_SCALAR_H_
#define SECEQ_SCALAR_H_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace seceq {

// Exact rational number. Every payoff, probability and value in the library
// is a Scalar; there is no floating-point path.
using Scalar = mpq_class;

// Parses "n", "-n" or "n/d" (d != 0) into a canonical rational. Throws
// InputError on anything else.
Scalar ParseScalar(std::string_view text);

// Canonical text form: "3", "-1/4".
std::string ToString(const Scalar& value);

std::string ToString(const std::vector<Scalar>& values);

Scalar Sum(const std::vector<Scalar>& values);

}  // namespace seceq

#endif  // SECEQ_SCALAR_H_
