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

// Exact-rational maximum flow and minimum cut on small s-t networks, and the
// decomposition of a fractional maximum flow into a convex combination of
// integral maximum flows.

#ifndef FAIRMATCH_FLOW_HPP_
#define FAIRMATCH_FLOW_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fairmatch/rational.hpp"

namespace fairmatch {

using FlowNode = std::size_t;
using ArcIndex = std::size_t;

class FlowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Capacity {
 public:
  static Capacity Finite(Rational value);
  static Capacity Unbounded() { return Capacity(); }

  bool unbounded() const { return unbounded_; }
  // Only meaningful when !unbounded().
  const Rational& value() const { return value_; }
  bool Admits(const Rational& amount) const { return unbounded_ || amount <= value_; }

 private:
  Capacity() = default;
  bool unbounded_ = true;
  Rational value_ = 0;
};

struct Arc {
  FlowNode from = 0;
  FlowNode to = 0;
  Capacity cap = Capacity::Unbounded();
};

class FlowNetwork {
 public:
  // Nodes 0 and 1 are the source and the sink.
  static constexpr FlowNode kSource = 0;
  static constexpr FlowNode kSink = 1;

  FlowNetwork();

  FlowNode AddNode(std::string name);
  // Throws FlowError for arcs into the source, out of the sink, unknown
  // endpoints, negative capacities, and unbounded arcs touching source/sink.
  ArcIndex AddArc(FlowNode from, FlowNode to, Capacity cap);
  void SetCapacity(ArcIndex arc, Capacity cap);

  std::size_t num_nodes() const { return names_.size(); }
  std::size_t num_arcs() const { return arcs_.size(); }
  const Arc& arc(ArcIndex a) const { return arcs_[a]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::string& name(FlowNode n) const { return names_[n]; }
  const std::vector<ArcIndex>& out_arcs(FlowNode n) const { return out_[n]; }
  const std::vector<ArcIndex>& in_arcs(FlowNode n) const { return in_[n]; }

  bool HasIntegralCapacities() const;

 private:
  void CheckArc(FlowNode from, FlowNode to, const Capacity& cap) const;

  std::vector<std::string> names_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcIndex>> out_;
  std::vector<std::vector<ArcIndex>> in_;
};

struct Flow {
  std::vector<Rational> arc_flow;
  Rational value = 0;

  bool IsIntegral() const;
  friend bool operator==(const Flow&, const Flow&) = default;
};

// Capacity bounds and conservation at every node except source and sink, and
// `value` equal to the net outflow of the source.
bool IsFeasible(const FlowNetwork& net, const Flow& flow);
// Feasible and admits no augmenting path.
bool IsMaximum(const FlowNetwork& net, const Flow& flow);

// Shortest augmenting paths. Integer capacities give an integral flow.
Flow MaxFlow(const FlowNetwork& net);

// Source side of the minimum cut closest to the source (nodes reachable from
// the source in the residual network). Throws FlowError if `flow` is not a
// maximum flow.
std::vector<bool> MinCut(const FlowNetwork& net, const Flow& flow);
// Source side of the minimum cut closest to the sink: every node that cannot
// reach the sink in the residual network. Contains every other minimum cut's
// source side.
std::vector<bool> MaximalMinCut(const FlowNetwork& net, const Flow& flow);
// Total capacity of arcs leaving `source_side`. Throws FlowError if an
// unbounded arc crosses the cut.
Rational CutCapacity(const FlowNetwork& net, const std::vector<bool>& source_side);

struct ConvexCombination {
  std::vector<std::pair<Flow, Rational>> members;  // (integral flow, weight)
};

// Writes a rational maximum flow on an integer-capacity network as a convex
// combination of integral maximum flows. Each step picks an integral maximum
// flow g within [floor f, ceil f] and peels the largest weight that keeps the
// residual (f - θ g) / (1 - θ) inside the same box, which rounds at least one
// fractional arc. Throws FlowError if `flow` is not maximum or a finite
// capacity is fractional.
ConvexCombination DecomposeMaxFlow(const FlowNetwork& net, const Flow& flow);

// Integral flow with lower[a] <= g[a] <= upper[a] and value `value`, if one
// exists.
std::optional<Flow> IntegralFlowWithBounds(const FlowNetwork& net,
                                           const std::vector<mpz_class>& lower,
                                           const std::vector<mpz_class>& upper,
                                           const mpz_class& value);

}  // namespace fairmatch

#endif  // FAIRMATCH_FLOW_HPP_
