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

#include "seceq/scalar.h"

#include <cctype>

#include "seceq/errors.h"

namespace seceq {
namespace {

bool IsInteger(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Scalar ParseScalar(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!IsInteger(num) || !IsInteger(den) || den.front() == '-' ||
      den.front() == '+') {
    throw InputError("not a rational number: \"" + std::string(text) + "\"");
  }
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw InputError("zero denominator in \"" + std::string(text) + "\"");
  }
  Scalar value(n, d);
  value.canonicalize();
  return value;
}

std::string ToString(const Scalar& value) { return value.get_str(); }

std::string ToString(const std::vector<Scalar>& values) {
  std::string out = "(";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += ToString(values[i]);
  }
  return out + ")";
}

Scalar Sum(const std::vector<Scalar>& values) {
  Scalar total = 0;
  for (const Scalar& v : values) total += v;
  return total;
}

}  // namespace seceq
