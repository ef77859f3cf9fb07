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

#ifndef SECEQ_TOOLS_REPORT_H_
#define SECEQ_TOOLS_REPORT_H_

#include <optional>
#include <string>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

#include "seceq/arena.h"
#include "seceq/delta.h"
#include "seceq/eliminate.h"
#include "seceq/oracle.h"
#include "seceq/product.h"
#include "seceq/strategy.h"
#include "seceq/verify.h"

namespace seceq::tools {

using Json = nlohmann::ordered_json;

Json StrategyJson(const Arena& arena, const FiniteMemoryStrategy& strategy);
Json ReportJson(const Arena& arena, const EquilibriumReport& report);
std::string ReportText(const Arena& arena, const EquilibriumReport& report);

Json TraceJson(const Arena& arena, const EliminationTrace& trace);
std::string TraceText(const Arena& arena, const EliminationTrace& trace);

Json TransformJson(const Arena& arena, const PayoffTracker& tracker,
                   const std::optional<DeltaParams>& params,
                   const TransformedPayoffs& payoffs);
std::string TransformText(const Arena& arena, const PayoffTracker& tracker,
                          const std::optional<DeltaParams>& params,
                          const TransformedPayoffs& payoffs);

Json OracleJson(const Arena& arena, const OracleResult& result);
std::string OracleText(const Arena& arena, const OracleResult& result);

}  // namespace seceq::tools

#endif  // SECEQ_TOOLS_REPORT_H_
