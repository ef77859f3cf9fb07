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

#ifndef SECEQ_ERRORS_H_
#define SECEQ_ERRORS_H_

#include <stdexcept>
#include <string>

namespace seceq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or semantically invalid input (documents, arenas, specs, lassos).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

// The input is well formed but outside what the requested operation handles,
// e.g. a payoff family an engine cannot solve.
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(what) {}
};

// Broken internal invariant. Seeing one of these is a bug.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace seceq

#endif  // SECEQ_ERRORS_H_
