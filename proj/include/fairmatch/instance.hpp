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

// Problem data model: a general graph whose nodes are agents holding b_i
// units of a homogeneous good, plus the node-expansion bridge between
// b-matchings and ordinary matchings on unit-peak copies.

#ifndef FAIRMATCH_INSTANCE_HPP_
#define FAIRMATCH_INSTANCE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairmatch/rational.hpp"

namespace fairmatch {

using NodeIndex = std::size_t;
using EdgeIndex = std::size_t;

// Thrown for malformed or invalid instance data. The message names the
// offending line or field.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an operation is asked to handle a feature it does not model,
// e.g. finite edge capacities in the node expansion.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NodeSpec {
  std::string id;
  std::int64_t peak = 0;
};

struct EdgeSpec {
  std::string u;
  std::string v;
  std::optional<std::int64_t> cap;  // nullopt = unbounded
};

struct Edge {
  NodeIndex u = 0;  // endpoint with the lexicographically smaller id
  NodeIndex v = 0;
  std::optional<std::int64_t> cap;
};

class Instance {
 public:
  // Validates and canonicalizes. Throws InstanceError on duplicate ids,
  // self-loops, duplicate edges, unknown endpoints, nonpositive peaks or
  // nonpositive capacities.
  static Instance Create(std::string name, std::vector<NodeSpec> nodes,
                         std::vector<EdgeSpec> edges);

  const std::string& name() const { return name_; }
  std::size_t num_nodes() const { return ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::string& id(NodeIndex i) const { return ids_[i]; }
  std::int64_t peak(NodeIndex i) const { return peaks_[i]; }
  const std::vector<std::int64_t>& peaks() const { return peaks_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  // (neighbor, edge index) pairs in edge order.
  const std::vector<std::pair<NodeIndex, EdgeIndex>>& incident(NodeIndex i) const {
    return incident_[i];
  }

  std::optional<NodeIndex> Find(std::string_view id) const;
  NodeIndex IndexOf(std::string_view id) const;  // throws InstanceError
  std::optional<EdgeIndex> FindEdge(NodeIndex a, NodeIndex b) const;

  bool IsUncapacitated() const;
  std::int64_t TotalPeak() const;

  // Same graph with different peaks. Zero peaks are accepted here; they arise
  // for derived problems such as realizing a target profile.
  Instance WithPeaks(std::vector<std::int64_t> peaks) const;
  // Subgraph induced on `keep` (ids preserved, order of `keep`).
  Instance Induced(const std::vector<NodeIndex>& keep) const;
  // Same nodes, with the listed edges dropped.
  Instance WithoutEdges(const std::vector<EdgeIndex>& drop) const;

 private:
  Instance() = default;
  void Index();

  std::string name_;
  std::vector<std::string> ids_;
  std::vector<std::int64_t> peaks_;
  std::vector<Edge> edges_;
  std::map<std::string, NodeIndex, std::less<>> by_id_;
  std::map<std::pair<NodeIndex, NodeIndex>, EdgeIndex> by_endpoints_;
  std::vector<std::vector<std::pair<NodeIndex, EdgeIndex>>> incident_;
};

// Parses the JSON instance format:
//   {"name": str, "nodes": [{"id": str, "peak": int}],
//    "edges": [{"u": str, "v": str, "cap": int|null}]}
Instance ParseInstance(std::string_view text);
Instance LoadInstance(const std::string& path);
std::string SerializeInstance(const Instance& inst);

// Integral edge multiplicities, indexed like Instance::edges().
struct BMatching {
  std::vector<std::int64_t> multiplicity;

  static BMatching Empty(const Instance& inst) {
    return BMatching{std::vector<std::int64_t>(inst.num_edges(), 0)};
  }
  std::vector<std::int64_t> Utilities(const Instance& inst) const;
  std::int64_t TotalUtility() const;  // twice the number of exchanged units
  bool IsFeasible(const Instance& inst) const;
  friend bool operator==(const BMatching&, const BMatching&) = default;
  friend auto operator<=>(const BMatching&, const BMatching&) = default;
};

// Exact per-node utilities x_i, aligned with the instance's node order.
struct UtilityProfile {
  std::vector<Rational> values;

  static UtilityProfile FromIntegers(const std::vector<std::int64_t>& xs);
  Rational Total() const;
  bool WithinPeaks(const Instance& inst) const;
  friend bool operator==(const UtilityProfile&, const UtilityProfile&) = default;
};

using UnitMatching = std::vector<std::pair<std::size_t, std::size_t>>;

// Unit-peak expansion: node i becomes copies i#1..i#b_i, and copy i#k is
// adjacent to j#l exactly when (i, j) is an edge. Copies of one node are
// never adjacent to each other.
struct ExpandedInstance {
  Instance base;
  std::vector<std::vector<std::size_t>> copies;  // base node -> copy indices
  std::vector<std::string> copy_ids;
  std::vector<NodeIndex> owner;                  // copy -> base node
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<EdgeIndex> edge_origin;            // expanded edge -> base edge

  std::size_t num_copies() const { return owner.size(); }
};

// Throws UnsupportedError if any edge carries a finite capacity.
ExpandedInstance ExpandNodes(const Instance& inst);

// Multiplicity of (i, j) = number of matched copy pairs (i#k, j#l).
BMatching ContractMatching(const ExpandedInstance& expanded, const UnitMatching& matching);

}  // namespace fairmatch

#endif  // FAIRMATCH_INSTANCE_HPP_
