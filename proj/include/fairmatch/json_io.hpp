// Copyright 2026 The fairmatch Authors.
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

// JSON views of results. Rationals are always "p/q" strings in lowest terms;
// objects keep insertion order so output follows the instance's node order.

#ifndef FAIRMATCH_JSON_IO_HPP_
#define FAIRMATCH_JSON_IO_HPP_

#include <json.hpp>

#include "fairmatch/mechanism.hpp"
#include "fairmatch/oracle.hpp"

namespace fairmatch {

using Json = nlohmann::ordered_json;

Json ProfileJson(const Instance& inst, const UtilityProfile& profile);
Json GedJson(const Instance& inst, const GedDecomposition& ged);
Json MatchingJson(const Instance& inst, const BMatching& m);  // [{u, v, mult}], mult > 0 only
Json LotteryJson(const Instance& inst, const Lottery& lottery);  // [{prob, matching}]
Json MarginalsJson(const Instance& inst, const UtilityProfile& profile);
Json ExchangeJson(const Instance& inst, const std::vector<Rational>& exchange);
Json FlowJson(const BipartiteConstruction& construction, const Flow& flow);
Json BreakpointsJson(const Instance& inst, const BipartiteConstruction& construction,
                     const std::vector<Breakpoint>& breakpoints);
Json ManipulationJson(const Instance& inst, const ManipulationReport& report);

}  // namespace fairmatch

#endif  // FAIRMATCH_JSON_IO_HPP_
