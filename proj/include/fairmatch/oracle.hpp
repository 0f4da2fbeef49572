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

// Exhaustive reference computations for small instances, and the
// manipulation harness built on them.

#ifndef FAIRMATCH_ORACLE_HPP_
#define FAIRMATCH_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairmatch/instance.hpp"
#include "fairmatch/rational.hpp"

namespace fairmatch {

class OracleSizeError : public std::runtime_error {
 public:
  OracleSizeError(std::int64_t size, std::int64_t limit);
  std::int64_t size() const { return size_; }
  std::int64_t limit() const { return limit_; }

 private:
  std::int64_t size_;
  std::int64_t limit_;
};

// 14 unless FAIRMATCH_ORACLE_LIMIT holds a positive integer.
std::int64_t DefaultOracleLimit();

// Calls `visit` on every b-matching (not only maximum ones) of an
// uncapacitated or capacitated instance. Refuses with OracleSizeError when
// the sum of peaks exceeds `limit`.
void ForEachBMatching(const Instance& inst, const std::function<void(const BMatching&)>& visit,
                      std::int64_t limit = DefaultOracleLimit());
std::vector<BMatching> EnumerateBMatchings(const Instance& inst,
                                           std::int64_t limit = DefaultOracleLimit());

std::int64_t MaxTotalUtility(const Instance& inst, std::int64_t limit = DefaultOracleLimit());

struct ParetoProfile {
  std::vector<std::int64_t> utilities;
  BMatching witness;
};

// Utility vectors of all b-matchings that no other b-matching Pareto
// dominates, each with one b-matching attaining it; sorted by utility vector.
std::vector<ParetoProfile> ParetoProfiles(const Instance& inst,
                                          std::int64_t limit = DefaultOracleLimit());

// Distinct utility vectors of maximum-total b-matchings, sorted.
std::vector<std::vector<std::int64_t>> MaximumProfiles(const Instance& inst,
                                                       std::int64_t limit = DefaultOracleLimit());

// x Lorenz-dominates y when every prefix sum of sorted(x) is >= the one of
// sorted(y). Weak version; throws std::invalid_argument on size mismatch.
bool LorenzDominates(const std::vector<Rational>& x, const std::vector<Rational>& y);
bool LorenzEqual(const std::vector<Rational>& x, const std::vector<Rational>& y);

// Brute-force classification per node: V^U if some maximum b-matching leaves
// the node below its peak; V^O if not, but it has a V^U neighbor; V^P
// otherwise. Returns 'U', 'O' or 'P'.
std::vector<char> GedOracle(const Instance& inst, std::int64_t limit = DefaultOracleLimit());

// Misreport by a coalition: changed peaks and hidden edges.
struct Deviation {
  std::vector<NodeIndex> coalition;
  std::map<NodeIndex, std::int64_t> peaks;  // reported peaks
  std::vector<EdgeIndex> hidden;            // each needs an endpoint in the coalition
};

enum class ManipulationVerdict { kProfitable, kUnprofitable, kMixed };

struct ManipulationReport {
  std::vector<NodeIndex> coalition;
  UtilityProfile truthful;      // mechanism output on the truthful report
  UtilityProfile deviated;      // mechanism output on the misreport
  std::vector<Rational> deltas; // per coalition member, change in canonical utility
  ManipulationVerdict verdict = ManipulationVerdict::kUnprofitable;
  bool all_strictly_gain = false;
  // Some single-peaked preference makes every member weakly better and one
  // strictly better.
  bool profitable_some_preference = false;
};

// True utility of realized amount x for an agent with true peak p: -|x - p|.
Rational CanonicalUtility(const Rational& x, std::int64_t peak);

// x' beats x for some single-peaked preference with peak p.
bool PreferredUnderSomeSinglePeaked(const Rational& x_new, const Rational& x_old,
                                    std::int64_t peak);

enum class Model { kIndivisible, kDivisible };

// Runs the mechanism on the truthful and on the deviated report and compares
// coalition outcomes. Hidden links only remove edges; unrelated nodes keep
// their reports. Throws InstanceError on invalid deviations.
ManipulationReport ManipulationExperiment(const Instance& truth, const Deviation& deviation,
                                          Model model = Model::kIndivisible);

struct RandomInstanceOptions {
  std::size_t min_nodes = 2;
  std::size_t max_nodes = 6;
  std::int64_t max_peak = 3;
  double edge_probability = 0.5;
  bool connected = true;
  bool bipartite = false;
};

Instance RandomInstance(std::mt19937_64& rng, const RandomInstanceOptions& options);

// Every connected graph on n nodes up to isomorphism, as edge lists over
// 0..n-1. Practical for n <= 6.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ConnectedGraphs(std::size_t n);

struct LinkManipulation {
  Instance instance;
  Deviation deviation;
  ManipulationReport report;
};

// Random search for a coalition that hides one or more of its own links and
// strictly gains for every member. Returns the first hit.
std::optional<LinkManipulation> SearchLinkManipulation(std::mt19937_64& rng,
                                                       const RandomInstanceOptions& options,
                                                       std::size_t trials);

}  // namespace fairmatch

#endif  // FAIRMATCH_ORACLE_HPP_
