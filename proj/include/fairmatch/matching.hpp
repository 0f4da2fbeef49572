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

// Maximum matching, maximum b-matching by node expansion, and the
// Gallai-Edmonds decomposition generalized to arbitrary peaks.

#ifndef FAIRMATCH_MATCHING_HPP_
#define FAIRMATCH_MATCHING_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "fairmatch/instance.hpp"

namespace fairmatch {

// Plain undirected graph on vertices 0..num_vertices-1.
struct UnitGraph {
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Edmonds' blossom algorithm. Pairs are reported with the smaller vertex
// first, sorted.
UnitMatching MaxCardinalityMatching(const UnitGraph& graph);

// Matching on an instance whose peaks are all 1; throws InstanceError
// otherwise. Pairs are node indices.
UnitMatching MaxMatching(const Instance& inst);

// Maximum total utility b-matching via expand -> blossom -> contract. Zero
// peaks are allowed (the node simply has no copies).
BMatching MaxBMatching(const Instance& inst);

enum class GedClass { kUnder, kOver, kPerfect };

struct GedDecomposition {
  std::vector<GedClass> node_class;  // per instance node
  std::vector<NodeIndex> under;      // V^U
  std::vector<NodeIndex> over;       // V^O
  std::vector<NodeIndex> perfect;    // V^P
  // Connected components of the subgraph induced on V^U, in node order.
  std::vector<std::vector<NodeIndex>> odd_components;
  // Sum of peaks minus one for components with at least two nodes.
  std::vector<std::optional<std::int64_t>> internal_cap;
  // Component index of each V^U node.
  std::vector<std::optional<std::size_t>> component_of;
};

// Reads the even / odd / unreached labels of an Edmonds search run from all
// exposed copies of the expanded graph (D -> V^U, A -> V^O, C -> V^P).
// Throws UnsupportedError on capacitated instances.
GedDecomposition GedDecompose(const Instance& inst);

// A b-matching whose node utilities equal `targets` exactly, or nullopt if
// none exists.
std::optional<BMatching> RealizeTargets(const Instance& inst,
                                        const std::vector<std::int64_t>& targets);

}  // namespace fairmatch

#endif  // FAIRMATCH_MATCHING_HPP_
