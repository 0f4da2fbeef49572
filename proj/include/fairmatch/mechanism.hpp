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

// Egalitarian exchange mechanisms. Both the divisible and the indivisible
// problem are reduced to a bipartite source -> A -> B -> sink network whose
// A side holds one node per agent; the egalitarian rule then water-fills the
// source arcs of the A side.

#ifndef FAIRMATCH_MECHANISM_HPP_
#define FAIRMATCH_MECHANISM_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "fairmatch/flow.hpp"
#include "fairmatch/instance.hpp"
#include "fairmatch/matching.hpp"
#include "fairmatch/rational.hpp"

namespace fairmatch {

enum class ConstructionKind {
  kDivisible,       // doubled network: A = V, B = V
  kIndivisible,     // GED-based network
  kDirectBipartite  // a bipartite instance taken as is: A = suppliers, B = demanders
};

enum class BRole {
  kMirror,         // divisible b_j, or c_i for i in V^P u V^O
  kOverDemanded,   // c'_j for j in V^O
  kComponentSink,  // B^{C_k} for an odd component with at least two nodes
  kDemander        // direct bipartite demander
};

enum class ArcRule {
  kSource,           // source -> a_i
  kSink,             // B node -> sink
  kEdge,             // a_i -> b_j for an original edge (divisible, direct bipartite)
  kMirror,           // a_i -> c_i
  kOverDemanded,     // a_i -> c'_j for i in V^U, j in V^O, (i, j) in E
  kComponent         // a_i -> B^{C_k}
};

struct AgentSlot {
  NodeIndex node = 0;
  FlowNode a_node = 0;
  ArcIndex source_arc = 0;
  std::int64_t peak = 0;
};

struct BSlot {
  FlowNode b_node = 0;
  ArcIndex sink_arc = 0;
  BRole role = BRole::kMirror;
  std::optional<NodeIndex> node;        // original node, when there is one
  std::optional<std::size_t> component; // odd component index for B^{C_k}
  std::int64_t capacity = 0;
};

struct ArcProvenance {
  ArcRule rule = ArcRule::kSource;
  std::optional<EdgeIndex> edge;        // original edge behind the arc
  std::optional<std::size_t> agent;     // AgentSlot index for source and cross arcs
  std::optional<std::size_t> b_slot;    // BSlot index for sink and cross arcs
};

struct BipartiteConstruction {
  ConstructionKind kind = ConstructionKind::kDivisible;
  FlowNetwork net;
  std::vector<AgentSlot> agents;
  std::vector<BSlot> b_side;
  std::vector<ArcProvenance> provenance;            // per arc
  std::vector<std::optional<std::size_t>> agent_of; // instance node -> agent slot
  std::size_t num_instance_nodes = 0;
};

// Source -> a_i (cap b_i), a_i -> b_j and a_j -> b_i for every edge (cap
// u_ij, unbounded when absent), b_i -> sink (cap b_i).
BipartiteConstruction BuildDivisible(const Instance& inst);

// Arcs: a_i -> c_i for V^P u V^O; a_i -> c'_j for V^U-V^O edges;
// a_i -> B^{C_k} for odd components with |C_k| >= 2. Throws UnsupportedError
// on capacitated instances.
BipartiteConstruction BuildIndivisible(const Instance& inst, const GedDecomposition& ged);

// `supplier[i]` picks the A side. Every edge must join a supplier and a
// demander; throws InstanceError otherwise.
BipartiteConstruction BuildDirectBipartite(const Instance& inst, const std::vector<bool>& supplier);

enum class BreakpointKind { kPeakReached, kBottleneck };

struct Breakpoint {
  Rational lambda;
  BreakpointKind kind = BreakpointKind::kPeakReached;
  std::vector<std::size_t> agents;     // agent slots: reached peak, or X*
  std::vector<std::size_t> demanders;  // B slots f(X*) for a bottleneck
};

struct EgalitarianResult {
  std::vector<Rational> allocation;  // per agent slot
  Flow flow;                         // maximum flow of the construction realizing it
  std::vector<Breakpoint> breakpoints;
};

// Parametric water-filling on the source arcs (cap min(lambda, b_i)). Each
// round finds the first bottleneck lambda* exactly by Newton steps on minimum
// cuts, freezes the largest bottleneck set X* (source side of the maximal
// minimum cut) at min(lambda*, b_i), removes X* and its demanders f(X*), and
// repeats. Agents that never meet a bottleneck get their peaks.
EgalitarianResult EgalitarianProfile(const BipartiteConstruction& construction);

struct LpRound {
  Rational level;
  std::vector<std::size_t> tight;  // agent slots frozen this round
};

struct LpResult {
  std::vector<Rational> allocation;  // per agent slot
  std::vector<LpRound> rounds;
};

// LP_1, LP_2, ... over the polymatroid of A-side allocations, rank(S) being
// the maximum flow through the source arcs of S. Constraints are enumerated
// per connected component of the construction, so components are limited to
// `max_component_agents` agents.
LpResult EgalitarianLp(const BipartiteConstruction& construction,
                       std::size_t max_component_agents = 20);

// Allocation per agent slot spread onto instance nodes (non-agents get 0).
UtilityProfile ToProfile(const BipartiteConstruction& construction,
                         const std::vector<Rational>& allocation);

struct DivisibleOutcome {
  UtilityProfile profile;
  std::vector<Rational> exchange;  // symmetric f_ij per instance edge
  Flow flow;                       // doubled-network flow with y_a = y_b = x
  EgalitarianResult supplier_side;
};

// Egalitarian exchange of a divisible good. Finite edge capacities are
// honored.
DivisibleOutcome EgalitarianDivisible(const Instance& inst);

struct MarginalOutcome {
  mpz_class units;
  Rational probability;
};

// floor(x_i) + 1 with probability frac(x_i), floor(x_i) otherwise; outcomes
// with probability zero are omitted.
std::vector<std::vector<MarginalOutcome>> ProbabilisticMarginals(const UtilityProfile& profile);

struct LotteryEntry {
  BMatching matching;
  Rational probability;
};

struct Lottery {
  std::vector<LotteryEntry> entries;
  UtilityProfile expected;
};

// Decomposes the egalitarian maximum flow into integral maximum flows and
// maps each one to a maximum b-matching: V^U-V^O exchanges come from the
// a_i -> c'_j arcs, V^P is matched internally and each odd component is
// completed internally to its B^{C_k} flow. Identical b-matchings are merged.
// Throws std::logic_error if some flow cannot be realized.
Lottery BuildLottery(const Instance& inst, const GedDecomposition& ged,
                     const BipartiteConstruction& construction, const Flow& egalitarian_flow);

// Maps one integral maximum flow of an indivisible construction to a b-matching.
BMatching RealizeIntegralFlow(const Instance& inst, const GedDecomposition& ged,
                              const BipartiteConstruction& construction, const Flow& flow);

struct IndivisibleOutcome {
  GedDecomposition ged;
  BipartiteConstruction construction;
  EgalitarianResult egalitarian;
  UtilityProfile profile;
  Lottery lottery;
};

// GED, construction, water-filling and (optionally) the lottery.
IndivisibleOutcome SolveIndivisible(const Instance& inst, bool with_lottery = true);

// Egalitarian rule applied to a bipartite instance directly: suppliers are
// water-filled on the source side and demanders on the reversed network.
UtilityProfile DirectBipartiteProfile(const Instance& inst);

// Two-coloring of a bipartite instance (first node of each component on the
// supplier side), or nullopt if the graph has an odd cycle.
std::optional<std::vector<bool>> BipartiteSides(const Instance& inst);

// Draws entry k with probability p_k; the stream is a pure function of seed.
class LotterySampler {
 public:
  LotterySampler(const Lottery& lottery, std::uint64_t seed);
  ~LotterySampler();
  LotterySampler(const LotterySampler&) = delete;
  LotterySampler& operator=(const LotterySampler&) = delete;

  const BMatching& Next();

 private:
  const Lottery& lottery_;
  mpz_class scale_;
  std::vector<mpz_class> cumulative_;
  gmp_randstate_t state_;
};

BMatching SampleLottery(const Lottery& lottery, std::uint64_t seed);

}  // namespace fairmatch

#endif  // FAIRMATCH_MECHANISM_HPP_
